#include "szego/gaussian_measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "szego/littlewood_paley.hpp"
#include "szego/norms.hpp"
#include "szego/rng.hpp"

namespace szego {

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += W0;
            key[1] += W1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double uniform_open_closed(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

void EnsembleSpec::validate() const {
    if (!(s > 0.5)) throw std::invalid_argument("EnsembleSpec: s must exceed 1/2");
    if (sample_count == 0) throw std::invalid_argument("EnsembleSpec: sample_count must be positive");
    if (galerkin_factor == 0) throw std::invalid_argument("EnsembleSpec: galerkin_factor must be positive");
    for (long N : cutoffs)
        if (N < 1) throw std::invalid_argument("EnsembleSpec: cutoffs must be positive");
}

cplx gaussian_coefficient(std::uint64_t seed, std::uint64_t sample, std::uint64_t n) {
    const PhiloxCounter ctr{static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32),
                            static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32)};
    const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const auto r = philox4x32_10(ctr, key);
    const double u1 = uniform_open_closed((static_cast<std::uint64_t>(r[0]) << 32) | r[1]);
    const double u2 = uniform_open_closed((static_cast<std::uint64_t>(r[2]) << 32) | r[3]);
    // |g|^2 ~ Exp(1)
    const double rad = std::sqrt(-std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

PlusSpectrum sample_mu(std::uint64_t seed, double s, std::size_t sample_index, std::size_t K) {
    if (!(s > 0.5)) throw std::invalid_argument("sample_mu: s must exceed 1/2");
    if (K == 0) throw std::invalid_argument("sample_mu: K must be positive");
    CVec c(K);
    for (std::size_t n = 0; n < K; ++n) {
        const double nn = static_cast<double>(n);
        c[n] = gaussian_coefficient(seed, sample_index, n) * std::pow(1.0 + nn * nn, -0.5 * s);
    }
    return PlusSpectrum(std::move(c));
}

PlusSpectrum sample_mu(const EnsembleSpec& spec, std::size_t sample_index, std::size_t K) {
    spec.validate();
    if (sample_index >= spec.sample_count) throw std::out_of_range("sample_mu: sample index out of range");
    return sample_mu(spec.seed, spec.s, sample_index, K);
}

double variance_partial_sum(double s, std::size_t K) {
    double acc = 0.0;
    for (std::size_t n = K; n-- > 0;) {
        const double nn = static_cast<double>(n);
        acc += std::pow(1.0 + nn * nn, -s);
    }
    return acc;
}

double variance_tail_bound(double s, std::size_t K) {
    const double k = static_cast<double>(std::max<std::size_t>(K, 1));
    return std::pow(k, -2.0 * s) + std::pow(k, 1.0 - 2.0 * s) / (2.0 * s - 1.0);
}

std::vector<std::pair<long, double>> besov_diagnostic(const PlusSpectrum& u, double s, double p) {
    std::vector<std::pair<long, double>> out;
    for (long N : dyadic_blocks(u.size())) {
        const double v = std::pow(static_cast<double>(N), s - 0.5) * lp_norm(lp_project(u.coeffs(), N), p);
        out.emplace_back(N, v);
    }
    return out;
}

}  // namespace szego
