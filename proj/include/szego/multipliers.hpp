#pragma once

namespace szego {

// <n>^p = (1 + n^2)^{p/2}
double jb_pow(double n, double p);

// <n1>^{2s} - <n2>^{2s} + <n3>^{2s} - <n4>^{2s}
double psi_s(long n1, long n2, long n3, long n4, double s);

// m^2 phi_N(m)^2, zero for m < 0
double block_energy_symbol(long m, long N);

// prod 1(n_i >= 0) * (H(n1) - H(n2) + H(n3) - H(n4)), H = block_energy_symbol
double psi_N(long n1, long n2, long n3, long n4, long N);

}  // namespace szego
