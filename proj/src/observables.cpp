#include "szego/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "szego/bump.hpp"
#include "szego/fft.hpp"
#include "szego/multipliers.hpp"
#include "szego/norms.hpp"
#include "szego/products.hpp"

namespace szego {

namespace {

// H(n) = n^2 phi_N(n)^2 is supported on n < 8N/5
std::size_t block_top(long N) { return static_cast<std::size_t>(std::ceil(block_support_hi(N))) + 1; }

double scale(double s, long N) { return std::pow(static_cast<double>(N), 4.0 * s - 4.0); }

// 2 Im sum_n H(n) conj(a_n) b_n
double weighted_im(const CVec& a, const CVec& b, long N) {
    const std::size_t top = std::min({block_top(N), a.size(), b.size()});
    double acc = 0.0;
    for (std::size_t n = 0; n < top; ++n)
        acc += block_energy_symbol(static_cast<long>(n), N) * (std::conj(a[n]) * b[n]).imag();
    return 2.0 * acc;
}

cplx weighted_dot(const CVec& a, const CVec& b, long N) {
    const std::size_t top = std::min({block_top(N), a.size(), b.size()});
    cplx acc{};
    for (std::size_t n = 0; n < top; ++n) acc += block_energy_symbol(static_cast<long>(n), N) * a[n] * std::conj(b[n]);
    return acc;
}

// Pi(2|u|^2 v + u^2 conj(v)): time derivative of Pi(|u|^2 u) in direction v
CVec cubic_derivative(const CVec& u, const CVec& v) {
    const std::size_t M = pow2_at_least(2 * u.size() + 2 * v.size());
    const CVec gu = synthesize(u, M), gv = synthesize(v, M);
    CVec prod(M);
    for (std::size_t j = 0; j < M; ++j)
        prod[j] = 2.0 * std::norm(gu[j]) * gv[j] + gu[j] * gu[j] * std::conj(gv[j]);
    return plus_part(analyze(prod), 2 * u.size() + v.size() - 2);
}

}  // namespace

double Q_pi(const PlusSpectrum& u, double s, std::size_t N) {
    const std::size_t K = std::min(N, u.size());
    const CVec uN(u.coeffs().begin(), u.coeffs().begin() + static_cast<long>(K));
    const CVec c = cubic_term(uN);
    double acc = 0.0;
    for (std::size_t n = 0; n < K; ++n) acc += jb_pow(static_cast<double>(n), 2.0 * s) * (std::conj(uN[n]) * c[n]).imag();
    return 2.0 * acc;
}

cplx Q_N_multilinear(const PlusSpectrum& f1, const PlusSpectrum& f2, const PlusSpectrum& f3,
                     const PlusSpectrum& f4, long N) {
    const CVec &a = f1.coeffs(), &b = f2.coeffs(), &c = f3.coeffs(), &d = f4.coeffs();
    const cplx t1 = weighted_dot(a, triple_product(b, c, d), N);
    const cplx t2 = std::conj(weighted_dot(b, triple_product(a, d, c), N));
    const cplx t3 = weighted_dot(c, triple_product(b, a, d), N);
    const cplx t4 = std::conj(weighted_dot(d, triple_product(a, b, c), N));
    return cplx(0.0, 0.5) * (t1 - t2 + t3 - t4);
}

double Q_N(const PlusSpectrum& u, long N) { return weighted_im(u.coeffs(), cubic_term(u.coeffs()), N); }

double F_N(const PlusSpectrum& u0, double s, long N) { return scale(s, N) * Q_N(u0, N); }

FGValues F_G_batch(const PlusSpectrum& u0, double s, const std::vector<long>& Ns, bool with_G,
                   std::size_t velocity_cutoff) {
    const CVec& u = u0.coeffs();
    const CVec c = cubic_term(u);
    FGValues out;
    CVec dc;
    if (with_G) {
        CVec v(c.size());
        for (std::size_t n = 0; n < c.size(); ++n) v[n] = cplx(0.0, -1.0) * c[n];
        if (velocity_cutoff > 0)
            for (std::size_t n = velocity_cutoff; n < v.size(); ++n) v[n] = cplx{};
        dc = cubic_derivative(u, v);
    }
    for (long N : Ns) {
        out.F.push_back(scale(s, N) * weighted_im(u, c, N));
        if (!with_G) continue;
        // d/dt [2 Im sum H conj(u) c] with u' = -i c and c' = Pi(2|u|^2 u' + u^2 conj(u'))
        std::size_t top = std::min(block_top(N), c.size());
        if (velocity_cutoff > 0) top = std::min(top, velocity_cutoff);
        double sq = 0.0;
        for (std::size_t n = 0; n < top; ++n) sq += block_energy_symbol(static_cast<long>(n), N) * std::norm(c[n]);
        out.G.push_back(scale(s, N) * (2.0 * sq + weighted_im(u, dc, N)));
    }
    return out;
}

double G_N(const PlusSpectrum& u0, double s, long N) { return F_G_batch(u0, s, {N}, true).G[0]; }

double G_N_multilinear(const PlusSpectrum& u0, double s, long N) {
    const CVec c = cubic_term(u0.coeffs());
    CVec vv(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) vv[n] = cplx(0.0, -1.0) * c[n];
    const PlusSpectrum v(std::move(vv));
    const PlusSpectrum& u = u0;
    const cplx sum = Q_N_multilinear(v, u, u, u, N) + Q_N_multilinear(u, v, u, u, N) +
                     Q_N_multilinear(u, u, v, u, N) + Q_N_multilinear(u, u, u, v, N);
    return scale(s, N) * sum.real();
}

double block_energy(const CVec& u, long N) {
    const std::size_t top = std::min(block_top(N), u.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < top; ++n) acc += block_energy_symbol(static_cast<long>(n), N) * std::norm(u[n]);
    return acc;
}

double energy_rate_finite_difference(const PlusSpectrum& u0, long N, double h, const FlowConfig& cfg) {
    const double ep = block_energy(flow_map(u0, h, cfg).coeffs(), N);
    const double em = block_energy(flow_map(u0, -h, cfg).coeffs(), N);
    return (ep - em) / (2.0 * h);
}

std::vector<std::vector<double>> h_N_batch(const PlusSpectrum& u0, double s, const std::vector<long>& Ns,
                                           const std::vector<double>& ts, const FlowConfig& cfg) {
    FlowConfig c = cfg;
    c.track_phase = false;
    c.track_density = false;
    const Trajectory tr = evolve(u0, ts, c);
    std::vector<double> e0;
    for (long N : Ns) e0.push_back(block_energy(tr.states[0].coeffs(), N));
    std::vector<std::vector<double>> out;
    for (double t : ts) {
        const CVec& ut = tr.states[tr.index_of(t)].coeffs();
        std::vector<double> row;
        for (std::size_t i = 0; i < Ns.size(); ++i)
            row.push_back(scale(s, Ns[i]) * (block_energy(ut, Ns[i]) - e0[i]));
        out.push_back(std::move(row));
    }
    return out;
}

double h_N_profile(const PlusSpectrum& u0, double t, double s, long N, const FlowConfig& cfg) {
    if (t == 0.0) return 0.0;
    return h_N_batch(u0, s, {N}, {t}, cfg)[0][0];
}

double taylor_residual(const PlusSpectrum& u0, double t, double s, long N, const FlowConfig& cfg) {
    const FGValues fg = F_G_batch(u0, s, {N}, true, cfg.cutoff > 0 ? cfg.cutoff : u0.size());
    return h_N_profile(u0, t, s, N, cfg) - t * fg.F[0] - 0.5 * t * t * fg.G[0];
}

double DensityValue::formula() const { return std::exp(log_formula); }
double DensityValue::integral() const { return std::exp(log_integral); }

DensityValue density_f_tN(const PlusSpectrum& u0, double t, double s, std::size_t N, const FlowConfig& cfg) {
    for (std::size_t n = N; n < u0.size(); ++n)
        if (u0[n] != cplx{}) throw std::invalid_argument("density_f_tN: datum not supported below N");
    FlowConfig c = cfg;
    c.cutoff = N;
    c.track_phase = false;
    c.track_density = true;
    c.density_s = s;
    const PlusSpectrum u = u0.resized(N);
    DensityValue out;
    if (t == 0.0) {
        out.backward_state = u;
        return out;
    }
    const Trajectory tr = evolve(u, -t, c);
    out.backward_state = tr.states.back();
    out.log_formula = -hs_norm_sq(out.backward_state, s) + hs_norm_sq(u, s);
    out.log_integral = -tr.density_integral.back();
    return out;
}

}  // namespace szego
