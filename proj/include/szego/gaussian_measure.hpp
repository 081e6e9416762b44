#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "szego/spectrum.hpp"

namespace szego {

struct EnsembleSpec {
    std::uint64_t seed = 20240601;
    std::size_t sample_count = 100;
    double s = 0.6;
    std::vector<long> cutoffs;
    std::vector<double> times;
    std::size_t galerkin_factor = 8;

    void validate() const;
};

// Standard complex Gaussian g_n for (seed, sample, n): Re, Im independent N(0, 1/2).
cplx gaussian_coefficient(std::uint64_t seed, std::uint64_t sample, std::uint64_t n);

// u^(n) = g_n / <n>^s for n < K. Nested in K by construction.
PlusSpectrum sample_mu(std::uint64_t seed, double s, std::size_t sample_index, std::size_t K);
PlusSpectrum sample_mu(const EnsembleSpec& spec, std::size_t sample_index, std::size_t K);

// sum_{n<K} <n>^{-2s}
double variance_partial_sum(double s, std::size_t K);
// upper bound on sum_{n>=K} <n>^{-2s}
double variance_tail_bound(double s, std::size_t K);

// (N, N^{s-1/2} ||P_N u||_{L^p}) for every block meeting the support of u.
std::vector<std::pair<long, double>> besov_diagnostic(const PlusSpectrum& u, double s, double p);

}  // namespace szego
