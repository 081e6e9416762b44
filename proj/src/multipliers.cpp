#include "szego/multipliers.hpp"

#include <cmath>

#include "szego/bump.hpp"

namespace szego {

double jb_pow(double n, double p) { return std::pow(1.0 + n * n, 0.5 * p); }

double psi_s(long n1, long n2, long n3, long n4, double s) {
    const double p = 2.0 * s;
    return jb_pow(n1, p) - jb_pow(n2, p) + jb_pow(n3, p) - jb_pow(n4, p);
}

double block_energy_symbol(long m, long N) {
    if (m < 0) return 0.0;
    const double phi = block_symbol(N, static_cast<double>(m));
    const double x = static_cast<double>(m);
    return x * x * phi * phi;
}

double psi_N(long n1, long n2, long n3, long n4, long N) {
    if (n1 < 0 || n2 < 0 || n3 < 0 || n4 < 0) return 0.0;
    return block_energy_symbol(n1, N) - block_energy_symbol(n2, N) + block_energy_symbol(n3, N) -
           block_energy_symbol(n4, N);
}

}  // namespace szego
