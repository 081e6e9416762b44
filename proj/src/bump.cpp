#include "szego/bump.hpp"

#include <cmath>

namespace szego {

namespace {

double theta(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    // S(t)/(S(t)+S(1-t)) without under/overflow
    return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

}  // namespace

double bump(double x) {
    const double a = std::fabs(x);
    if (a <= kBumpPlateau) return 1.0;
    if (a >= kBumpEdge) return 0.0;
    return theta((kBumpEdge - a) / (kBumpEdge - kBumpPlateau));
}

double block_symbol(long N, double xi) {
    if (N <= 1) return bump(xi);
    const double y = xi / static_cast<double>(N);
    return bump(y) - bump(2.0 * y);
}

double block_support_lo(long N) { return N <= 1 ? -kBumpEdge : 0.625 * static_cast<double>(N); }
double block_support_hi(long N) { return kBumpEdge * static_cast<double>(N); }

}  // namespace szego
