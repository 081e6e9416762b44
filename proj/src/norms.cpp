#include "szego/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "szego/fft.hpp"
#include "szego/littlewood_paley.hpp"

namespace szego {

double l2_norm_sq(const CVec& u) {
    double acc = 0.0;
    for (const auto& z : u) acc += std::norm(z);
    return acc;
}
double l2_norm_sq(const PlusSpectrum& u) { return l2_norm_sq(u.coeffs()); }

double hs_norm_sq(const CVec& u, double s) {
    double acc = 0.0;
    for (std::size_t n = 0; n < u.size(); ++n) {
        const double nn = static_cast<double>(n);
        acc += std::pow(1.0 + nn * nn, s) * std::norm(u[n]);
    }
    return acc;
}
double hs_norm_sq(const PlusSpectrum& u, double s) { return hs_norm_sq(u.coeffs(), s); }

double homog_norm_sq(const CVec& u, double sigma) {
    double acc = 0.0;
    for (std::size_t n = 1; n < u.size(); ++n)
        acc += std::pow(static_cast<double>(n), 2.0 * sigma) * std::norm(u[n]);
    if (sigma == 0.0 && !u.empty()) acc += std::norm(u[0]);
    return acc;
}
double homog_norm_sq(const PlusSpectrum& u, double sigma) { return homog_norm_sq(u.coeffs(), sigma); }

double momentum(const CVec& u) {
    double acc = 0.0;
    for (std::size_t n = 1; n < u.size(); ++n) acc += static_cast<double>(n) * std::norm(u[n]);
    return acc;
}

namespace {

bool even_integer(double p) { return p == std::floor(p) && static_cast<long>(p) % 2 == 0; }

}  // namespace

double lp_norm(const CVec& u, double p, int oversample) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: p must lie in [1, inf)");
    const std::size_t K = u.size();
    const std::size_t M = even_integer(p)
                              ? pow2_at_least(static_cast<std::size_t>(p) * K + 1)
                              : pow2_at_least(static_cast<std::size_t>(std::max(oversample, 2)) * K);
    const CVec g = synthesize(u, M);
    double acc = 0.0;
    if (even_integer(p)) {
        const long half = static_cast<long>(p) / 2;
        for (const auto& z : g) {
            const double a = std::norm(z);
            double v = 1.0;
            for (long k = 0; k < half; ++k) v *= a;
            acc += v;
        }
    } else {
        for (const auto& z : g) acc += std::pow(std::abs(z), p);
    }
    return std::pow(acc / static_cast<double>(M), 1.0 / p);
}
double lp_norm(const PlusSpectrum& u, double p, int oversample) { return lp_norm(u.coeffs(), p, oversample); }

double l4_hamiltonian(const CVec& u) {
    const std::size_t M = pow2_at_least(4 * u.size() + 1);
    const CVec g = synthesize(u, M);
    double acc = 0.0;
    for (const auto& z : g) {
        const double a = std::norm(z);
        acc += a * a;
    }
    return acc / static_cast<double>(M);
}
double l4_hamiltonian(const PlusSpectrum& u) { return l4_hamiltonian(u.coeffs()); }

double linf_grid(const CVec& u, int factor) {
    const CVec g = synthesize(u, pow2_at_least(static_cast<std::size_t>(factor) * u.size()));
    double m = 0.0;
    for (const auto& z : g) m = std::max(m, std::abs(z));
    return m;
}

double grid_l2_sq(const PlusSpectrum& u) {
    const std::size_t M = pow2_at_least(2 * u.size());
    const CVec g = synthesize(u.coeffs(), M);
    double acc = 0.0;
    for (const auto& z : g) acc += std::norm(z);
    return acc / static_cast<double>(M);
}

double besov_norm(const PlusSpectrum& u, double sigma, double p, double q, int oversample) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("besov_norm: p must lie in [1, inf)");
    const bool qinf = std::isinf(q) && q > 0;
    if (!qinf && !(q >= 1.0)) throw std::invalid_argument("besov_norm: q must be finite >= 1 or infinity");
    double acc = 0.0;
    for (long N : dyadic_blocks(u.size())) {
        const double b = std::pow(static_cast<double>(N), sigma) *
                         lp_norm(lp_project(u.coeffs(), N), p, oversample);
        if (qinf) acc = std::max(acc, b);
        else acc += std::pow(b, q);
    }
    return qinf ? acc : std::pow(acc, 1.0 / q);
}

}  // namespace szego
