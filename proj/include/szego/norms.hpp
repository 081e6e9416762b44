#pragma once

#include "szego/spectrum.hpp"

namespace szego {

double l2_norm_sq(const PlusSpectrum& u);
double l2_norm_sq(const CVec& u);
// sum <n>^{2s} |u^(n)|^2, <n> = sqrt(1 + n^2)
double hs_norm_sq(const PlusSpectrum& u, double s);
double hs_norm_sq(const CVec& u, double s);
// sum n^{2 sigma} |u^(n)|^2
double homog_norm_sq(const PlusSpectrum& u, double sigma);
double homog_norm_sq(const CVec& u, double sigma);
// sum n |u^(n)|^2
double momentum(const CVec& u);

// ((1/2pi) int |u|^p)^{1/p} by the trapezoid rule. Even p uses a grid with M > p K,
// which is exact; other p oversample by the given factor.
double lp_norm(const PlusSpectrum& u, double p, int oversample = 8);
double lp_norm(const CVec& u, double p, int oversample = 8);
// ||u||_{L^4}^4
double l4_hamiltonian(const PlusSpectrum& u);
double l4_hamiltonian(const CVec& u);
// max over a grid of size pow2 >= factor*K
double linf_grid(const CVec& u, int factor = 4);
// (1/M) sum_j |u(x_j)|^2 on a grid with M >= 2K
double grid_l2_sq(const PlusSpectrum& u);

// || N^sigma ||P_N u||_{L^p} ||_{l^q(N dyadic)}; q may be +infinity.
double besov_norm(const PlusSpectrum& u, double sigma, double p, double q, int oversample = 8);

}  // namespace szego
