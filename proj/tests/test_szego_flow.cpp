#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "szego/bump.hpp"
#include "szego/flow.hpp"
#include "szego/gaussian_measure.hpp"
#include "szego/integrators.hpp"
#include "szego/norms.hpp"
#include "szego/paralinear.hpp"

using namespace szego;

namespace {

FlowConfig tight(std::size_t K) {
    FlowConfig c;
    c.cutoff = K;
    c.rtol = 1e-12;
    c.atol = 1e-14;
    return c;
}

double l2_diff(const PlusSpectrum& a, const PlusSpectrum& b) {
    double acc = 0.0;
    for (std::size_t n = 0; n < std::max(a.size(), b.size()); ++n)
        acc += std::norm(a.at(static_cast<long>(n)) - b.at(static_cast<long>(n)));
    return std::sqrt(acc);
}

}  // namespace

TEST(Integrators, Rk4AndDp54OnLinearOde) {
    // y' = i y: exact y(t) = e^{it}
    const Rhs f = [](double, const CVec& y, CVec& dy) { dy = {cplx(0.0, 1.0) * y[0]}; };
    CVec y{1.0};
    rk4_integrate(f, y, 0.0, 1.0, 1e-3);
    EXPECT_NEAR(std::abs(y[0] - std::polar(1.0, 1.0)), 0.0, 1e-12);
    y = {1.0};
    StepStats st;
    dp54_integrate(f, y, 0.0, -2.0, AdaptiveOptions{1e-12, 1e-14}, &st);
    EXPECT_NEAR(std::abs(y[0] - std::polar(1.0, -2.0)), 0.0, 1e-10);
    EXPECT_GT(st.accepted, 0u);
}

TEST(Integrators, Rk4ErrorIsFourthOrder) {
    const Rhs f = [](double t, const CVec& y, CVec& dy) { dy = {-y[0] * t}; };
    auto err = [&](double dt) {
        CVec y{1.0};
        rk4_integrate(f, y, 0.0, 1.0, dt);
        return std::abs(y[0] - std::exp(-0.5));
    };
    const double order = std::log2(err(0.02) / err(0.01));
    EXPECT_NEAR(order, 4.0, 0.1);
}

TEST(Integrators, UnderflowIsReported) {
    const Rhs blowup = [](double, const CVec& y, CVec& dy) { dy = {y[0] * y[0] * y[0]}; };
    CVec y{10.0};
    EXPECT_THROW(dp54_integrate(blowup, y, 0.0, 1.0, AdaptiveOptions{1e-10, 1e-12}), StepSizeUnderflow);
}

TEST(Flow, ConfigValidation) {
    FlowConfig c;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.cutoff = 8;
    c.padding_factor = 2;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.padding_factor = 4;
    c.track_phase = true;
    c.phase_block = 12;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Flow, SingleModeIsExactPhaseRotation) {
    // Pi(|u|^2 u) = |a|^2 u for u = a e^{ikx}, so u(t) = a e^{-i |a|^2 t} e^{ikx}
    for (std::size_t k : {0u, 5u}) {
        CVec c(16, cplx{});
        c[k] = cplx(0.8, -0.6) * 1.3;
        const PlusSpectrum u0(c);
        const PlusSpectrum u1 = flow_map(u0, 1.0, tight(16));
        const cplx exact = c[k] * std::polar(1.0, -std::norm(c[k]));
        EXPECT_LT(std::abs(u1[k] - exact), 1e-10);
        double other = 0.0;
        for (std::size_t n = 0; n < 16; ++n)
            if (n != k) other += std::abs(u1[n]);
        EXPECT_LT(other, 1e-12);
    }
}

TEST(Flow, RhsMatchesDirectCubic) {
    std::mt19937_64 rng(8);
    const CVec u = oracle::random_coeffs(rng, 10);
    const CVec c = oracle::cubic(u);
    const PlusSpectrum r = rhs_truncated(PlusSpectrum(u), 10);
    ASSERT_EQ(r.size(), 10u);
    for (std::size_t n = 0; n < 10; ++n) EXPECT_LT(std::abs(r[n] - cplx(0.0, -1.0) * c[n]), 1e-12);
}

TEST(Flow, ReversibleAndConservative) {
    const PlusSpectrum u0 = sample_mu(17, 0.7, 0, 64);
    FlowConfig c = tight(64);
    EXPECT_LT(reversibility_check(u0, 1.0, c), 1e-9);
    const Trajectory tr = evolve(u0, {0.25, 0.5, 1.0}, c);
    ASSERT_EQ(tr.times.size(), 4u);
    EXPECT_EQ(tr.times[0], 0.0);
    const ConservedValues& a = tr.conserved_log.front();
    for (const ConservedValues& b : tr.conserved_log) {
        EXPECT_LT(std::fabs(b.mass - a.mass) / a.mass, 1e-10);
        EXPECT_LT(std::fabs(b.momentum - a.momentum) / a.momentum, 1e-10);
        EXPECT_LT(std::fabs(b.hamiltonian - a.hamiltonian) / a.hamiltonian, 1e-10);
    }
    EXPECT_EQ(tr.index_of(0.5), 2u);
    EXPECT_THROW(tr.index_of(0.3), std::out_of_range);
}

TEST(Flow, Rk4AgreesWithAdaptive) {
    const PlusSpectrum u0 = sample_mu(17, 0.9, 1, 32);
    FlowConfig rk = tight(32);
    rk.integrator = Integrator::rk4_fixed;
    rk.dt = 1e-3;
    EXPECT_LT(l2_diff(flow_map(u0, 0.5, rk), flow_map(u0, 0.5, tight(32))), 1e-9);
}

TEST(Flow, GalerkinTruncationKeepsSupport) {
    const PlusSpectrum u0 = sample_mu(2, 0.8, 0, 12);
    const PlusSpectrum u1 = flow_map(u0, 0.3, tight(12));
    EXPECT_EQ(u1.size(), 12u);
    EXPECT_THROW(flow_map(sample_mu(2, 0.8, 0, 20), 0.3, tight(12)), std::invalid_argument);
}

TEST(Flow, PhaseOfConstantDatum) {
    // P_{<<N} of a constant is the constant, so Theta(t, x) = |a|^2 t on the whole grid
    CVec c(8, cplx{});
    c[0] = cplx(0.6, 0.3);
    FlowConfig cfg = tight(8);
    cfg.track_phase = true;
    cfg.phase_block = 64;
    const Trajectory tr = evolve(PlusSpectrum(c), {0.7}, cfg);
    ASSERT_TRUE(tr.has_phase());
    for (double th : tr.phase.back()) EXPECT_NEAR(th, std::norm(c[0]) * 0.7, 1e-11);
}

TEST(Paralinear, LLHMatchesBlockwiseOracle) {
    // ratio 1/2 so that P_{<<N3} is non-trivial at small sizes
    const DyadicRelations rel{0.5};
    std::mt19937_64 rng(21);
    const CVec f = oracle::random_coeffs(rng, 40), g = oracle::random_coeffs(rng, 40), w = oracle::random_coeffs(rng, 40);
    auto low = [&](const CVec& v, long N3) {
        CVec out(v.size());
        for (std::size_t n = 0; n < v.size(); ++n) {
            double m = 0.0;
            for (long M = 1; M < rel.ratio * N3; M *= 2)
                m += M == 1 ? bump(double(n)) : bump(double(n) / M) - bump(2.0 * n / M);
            out[n] = m * v[n];
        }
        return out;
    };
    CVec ref(f.size() + w.size() - 1, cplx{});
    for (long N3 = 1; N3 <= 64; N3 *= 2) {
        CVec hi(w.size());
        for (std::size_t n = 0; n < w.size(); ++n)
            hi[n] = (N3 == 1 ? bump(double(n)) : bump(double(n) / N3) - bump(2.0 * n / N3)) * w[n];
        const CVec t = oracle::triple(low(f, N3), low(g, N3), hi);
        for (std::size_t n = 0; n < ref.size() && n < t.size(); ++n) ref[n] += t[n];
    }
    const PlusSpectrum got = paraproduct_LLH(PlusSpectrum(f), PlusSpectrum(g), PlusSpectrum(w), rel);
    EXPECT_LT(oracle::max_abs_diff(got.coeffs(), ref), 1e-11 * (1.0 + oracle::max_abs(ref)));
}

TEST(Paralinear, SystemIsConsistentWithFlow) {
    const PlusSpectrum u0 = sample_mu(4, 0.7, 0, 64);
    ParaConfig para;
    para.relations = DyadicRelations{0.25};
    para.enforce_local_time = false;
    const FlowConfig cfg = tight(64);
    const ParaTrajectory tr = evolve_para_system(u0, {0.02, 0.05}, cfg, para);
    EXPECT_LT(tr.max_consistency_error, 1e-9);
    EXPECT_LT(l2_diff(tr.u.back(), flow_map(u0, 0.05, cfg)), 1e-9);
    para.enforce_local_time = true;
    EXPECT_THROW(evolve_para_system(u0, {10.0}, cfg, para), std::invalid_argument);
}

TEST(Paralinear, LocalTimeShrinksWithNorm) {
    CVec small(16, cplx{}), big(16, cplx{});
    small[4] = 0.1;
    big[4] = 10.0;
    EXPECT_GT(para_local_time(PlusSpectrum(small), 0.7, 12.0), para_local_time(PlusSpectrum(big), 0.7, 12.0));
    EXPECT_LE(para_local_time(PlusSpectrum(small), 0.7, 12.0), 1.0);
}
