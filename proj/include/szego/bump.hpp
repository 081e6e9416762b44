#pragma once

namespace szego {

// Smooth even cutoff: 1 on |x| <= 5/4, 0 on |x| >= 8/5,
// phi(x) = theta((8/5 - |x|) / (8/5 - 5/4)), theta(t) = S(t) / (S(t) + S(1 - t)), S(t) = exp(-1/t).
double bump(double x);

// phi_1(xi) = phi(|xi|); phi_N(xi) = phi(xi/N) - phi(2 xi/N) for dyadic N >= 2.
double block_symbol(long N, double xi);

// Open support (lo, hi) of phi_N on the half line.
double block_support_lo(long N);
double block_support_hi(long N);

constexpr double kBumpPlateau = 1.25;
constexpr double kBumpEdge = 1.6;

}  // namespace szego
