#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "szego/gaussian_measure.hpp"
#include "szego/norms.hpp"
#include "szego/parallel.hpp"
#include "szego/rng.hpp"
#include "szego/statistics.hpp"

using namespace szego;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}),
              (PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
              (PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, UniformRange) {
    EXPECT_GT(uniform_open_closed(0), 0.0);
    EXPECT_LE(uniform_open_closed(~0ULL), 1.0);
    EXPECT_EQ(uniform_open_closed(~0ULL), 1.0);
}

TEST(Sampler, CoefficientsAreDeterministicAndNested) {
    const PlusSpectrum a = sample_mu(7, 0.8, 3, 64);
    const PlusSpectrum b = sample_mu(7, 0.8, 3, 256);
    for (std::size_t n = 0; n < 64; ++n) EXPECT_EQ(a[n], b[n]);
    const PlusSpectrum c = sample_mu(7, 0.8, 3, 64);
    for (std::size_t n = 0; n < 64; ++n) EXPECT_EQ(a[n], c[n]);
    const PlusSpectrum d = sample_mu(8, 0.8, 3, 64);
    EXPECT_NE(a[5], d[5]);
    for (std::size_t n = 0; n < 64; ++n)
        EXPECT_NEAR(std::abs(a[n]), std::abs(gaussian_coefficient(7, 3, n)) * std::pow(1.0 + double(n) * n, -0.4),
                    1e-15);
}

TEST(Sampler, RejectsBadParameters) {
    EXPECT_THROW(sample_mu(1, 0.5, 0, 8), std::invalid_argument);
    EXPECT_THROW(sample_mu(1, 0.7, 0, 0), std::invalid_argument);
    EnsembleSpec spec;
    spec.sample_count = 2;
    EXPECT_THROW(sample_mu(spec, 2, 8), std::out_of_range);
    spec.cutoffs = {0};
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Sampler, ComplexGaussianIsotropy) {
    // E g^2 = 0, E |g|^2 = 1, E Re(g)^2 = 1/2, each within 3 standard errors over 40000 draws
    std::vector<double> re2, im2, mod2, sq_re, sq_im;
    for (std::uint64_t i = 0; i < 200; ++i)
        for (std::uint64_t n = 0; n < 200; ++n) {
            const cplx g = gaussian_coefficient(99, i, n);
            mod2.push_back(std::norm(g));
            re2.push_back(g.real() * g.real());
            const cplx g2 = g * g;
            sq_re.push_back(g2.real());
            sq_im.push_back(g2.imag());
        }
    EXPECT_LE(std::fabs(mean(mod2) - 1.0), 3.0 * standard_error(mod2));
    EXPECT_LE(std::fabs(mean(re2) - 0.5), 3.0 * standard_error(re2));
    EXPECT_LE(std::fabs(mean(sq_re)), 3.0 * standard_error(sq_re));
    EXPECT_LE(std::fabs(mean(sq_im)), 3.0 * standard_error(sq_im));
}

TEST(Sampler, MassMatchesVariancePartialSum) {
    const double s = 0.9;
    const std::size_t K = 128;
    std::vector<double> m;
    for (std::size_t i = 0; i < 2000; ++i) m.push_back(l2_norm_sq(sample_mu(5, s, i, K)));
    EXPECT_LE(std::fabs(mean(m) - variance_partial_sum(s, K)), 3.0 * standard_error(m));
}

TEST(Sampler, VarianceSums) {
    double direct = 0.0;
    for (int n = 0; n < 50; ++n) direct += std::pow(1.0 + double(n) * n, -0.8);
    EXPECT_NEAR(variance_partial_sum(0.8, 50), direct, 1e-13);
    double tail = 0.0;
    for (int n = 50; n < 5000000; ++n) tail += std::pow(1.0 + double(n) * n, -0.8);
    EXPECT_GE(variance_tail_bound(0.8, 50), tail);
    EXPECT_LE(variance_tail_bound(0.8, 50), 1.5 * tail);
}

TEST(Sampler, BesovDiagnosticIsBoundedAcrossBlocks) {
    // samples sit just below H^{s-1/2}: N^{s-1/2} ||P_N u||_{L^p} stays O(1) up to logarithms
    const auto d = besov_diagnostic(sample_mu(3, 0.8, 0, 4096), 0.8, 4.0);
    ASSERT_FALSE(d.empty());
    for (const auto& [N, v] : d) {
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 10.0) << "N=" << N;
    }
}

TEST(Statistics, BasicEstimators) {
    const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    EXPECT_DOUBLE_EQ(mean(v), 2.5);
    EXPECT_NEAR(variance(v), 5.0 / 3.0, 1e-15);
    EXPECT_NEAR(standard_error(v), std::sqrt(5.0 / 12.0), 1e-15);
    EXPECT_DOUBLE_EQ(median(v), 2.5);
    EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
}

TEST(Statistics, PowerLawFitRecoversExponent) {
    std::vector<double> x, y;
    for (int k = 0; k < 8; ++k) {
        x.push_back(std::ldexp(1.0, k));
        y.push_back(3.0 * std::pow(x.back(), -1.7));
    }
    const PowerLawFit f = fit_power_law(x, y);
    EXPECT_NEAR(f.exponent, -1.7, 1e-12);
    EXPECT_NEAR(std::exp(f.log_prefactor), 3.0, 1e-11);
    EXPECT_LE(f.ci_lo, f.exponent + 1e-12);
    EXPECT_GE(f.ci_hi, f.exponent - 1e-12);
}

TEST(Statistics, EnsembleFitAndBootstrap) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    const std::vector<double> x{1, 2, 4, 8, 16};
    std::vector<std::vector<double>> rows(400);
    for (auto& r : rows)
        for (double xi : x) r.push_back(std::sqrt(xi) * nd(rng));
    // E value^2 = x
    const PowerLawFit f = fit_power_law_ensemble(x, rows, [](const std::vector<double>& c) {
        double a = 0.0;
        for (double v : c) a += v * v;
        return a / c.size();
    });
    EXPECT_NEAR(f.exponent, 1.0, 0.15);
    EXPECT_LT(f.ci_lo, 1.0 + 0.2);
    std::vector<double> sample;
    for (int i = 0; i < 1000; ++i) sample.push_back(nd(rng));
    const double se = bootstrap_se(sample, [](const std::vector<double>& c) { return mean(c); });
    EXPECT_NEAR(se, standard_error(sample), 0.2 * standard_error(sample));
}

TEST(Parallel, DeterministicAndPropagatesExceptions) {
    std::vector<double> out(100);
    parallel_for(out.size(), [&](std::size_t i) { out[i] = std::sqrt(double(i)); }, 3);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], std::sqrt(double(i)));
    EXPECT_THROW(parallel_for(10, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }, 2),
                 std::runtime_error);
}
