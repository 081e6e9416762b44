#include "szego/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "szego/fft.hpp"
#include "szego/norms.hpp"
#include "szego/products.hpp"

namespace szego {

void FlowConfig::validate() const {
    if (cutoff == 0) throw std::invalid_argument("FlowConfig: cutoff must be positive");
    if (dt < 0.0) throw std::invalid_argument("FlowConfig: dt must be positive");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw std::invalid_argument("FlowConfig: rtol and atol must be positive");
    if (padding_factor < 4) throw std::invalid_argument("FlowConfig: padding_factor must be >= 4");
    if (track_phase && phase_block != 0 && !is_dyadic(phase_block))
        throw std::invalid_argument("FlowConfig: phase_block must be dyadic");
}

std::size_t Trajectory::index_of(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] == t) return i;
    throw std::out_of_range("Trajectory: time not recorded");
}

ConservedValues conserved(const CVec& u) {
    return {l2_norm_sq(u), momentum(u), l4_hamiltonian(u)};
}

PlusSpectrum rhs_truncated(const PlusSpectrum& u, std::size_t N, int padding) {
    if (N == 0) throw std::invalid_argument("rhs_truncated: N must be positive");
    const CVec c = cubic_term(u.coeffs(), padding);
    CVec out(std::max<std::size_t>(N, 1));
    const cplx mi(0.0, -1.0);
    for (std::size_t n = 0; n < N && n < c.size(); ++n) out[n] = mi * c[n];
    return PlusSpectrum(std::move(out));
}

double default_dt(const PlusSpectrum& u0) {
    const double m = linf_grid(u0.coeffs());
    return 0.1 / (1.0 + m * m);
}

namespace {

CVec embed(const PlusSpectrum& u0, std::size_t K) {
    for (std::size_t n = K; n < u0.size(); ++n)
        if (u0[n] != cplx{}) throw std::invalid_argument("evolve: datum not supported below the cutoff");
    CVec y(K);
    for (std::size_t n = 0; n < K && n < u0.size(); ++n) y[n] = u0[n];
    return y;
}

}  // namespace

Trajectory evolve(const PlusSpectrum& u0, const std::vector<double>& times, const FlowConfig& cfg) {
    cfg.validate();
    const std::size_t K = cfg.cutoff;
    const std::size_t Mg = cfg.track_phase
                               ? (cfg.phase_grid ? cfg.phase_grid
                                                 : pow2_at_least(static_cast<std::size_t>(cfg.padding_factor) * K))
                               : 0;
    if (Mg && Mg < 2 * K) throw std::invalid_argument("evolve: phase grid too coarse");
    const std::size_t off_q = K + Mg;
    const std::size_t dim = off_q + (cfg.track_density ? 1 : 0);

    std::vector<double> phase_sym;
    if (cfg.track_phase) {
        phase_sym.assign(K, 1.0);
        if (cfg.phase_block > 0)
            for (std::size_t n = 0; n < K; ++n)
                phase_sym[n] = lp_symbol(static_cast<long>(n), cfg.phase_block, LPMode::much_less, cfg.relations);
    }
    std::vector<double> weight;
    if (cfg.track_density) {
        weight.resize(K);
        for (std::size_t n = 0; n < K; ++n) {
            const double nn = static_cast<double>(n);
            weight[n] = std::pow(1.0 + nn * nn, cfg.density_s);
        }
    }

    const int pad = cfg.padding_factor;
    Rhs f = [&](double, const CVec& y, CVec& dy) {
        const CVec u(y.begin(), y.begin() + static_cast<long>(K));
        const CVec c = cubic_term(u, pad);
        const cplx mi(0.0, -1.0);
        for (std::size_t n = 0; n < K; ++n) dy[n] = mi * c[n];
        if (Mg) {
            CVec low(K);
            for (std::size_t n = 0; n < K; ++n) low[n] = phase_sym[n] * u[n];
            const CVec g = synthesize(low, Mg);
            for (std::size_t j = 0; j < Mg; ++j) dy[K + j] = std::norm(g[j]);
        }
        if (cfg.track_density) {
            double acc = 0.0;
            for (std::size_t n = 0; n < K; ++n) acc += weight[n] * (std::conj(u[n]) * c[n]).imag();
            dy[off_q] = 2.0 * acc;
        }
    };

    CVec y(dim);
    {
        const CVec u = embed(u0, K);
        std::copy(u.begin(), u.end(), y.begin());
    }

    Trajectory tr;
    tr.phase_grid = Mg;
    tr.phase_block = cfg.track_phase ? cfg.phase_block : 0;
    auto record = [&](double t) {
        const CVec u(y.begin(), y.begin() + static_cast<long>(K));
        tr.times.push_back(t);
        tr.states.emplace_back(u);
        tr.conserved_log.push_back(conserved(u));
        if (Mg) {
            std::vector<double> th(Mg);
            for (std::size_t j = 0; j < Mg; ++j) th[j] = y[K + j].real();
            tr.phase.push_back(std::move(th));
        }
        if (cfg.track_density) tr.density_integral.push_back(y[off_q].real());
    };
    record(0.0);

    double dt = cfg.dt;
    if (cfg.integrator == Integrator::rk4_fixed && dt == 0.0) dt = default_dt(u0);
    AdaptiveOptions opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    double h = 0.0;
    double t = 0.0;
    for (double target : times) {
        if (target == 0.0 && t == 0.0) continue;
        if (t != 0.0 && (target - t) * t < 0.0)
            throw std::invalid_argument("evolve: output times must move monotonically away from 0");
        if (cfg.integrator == Integrator::rk4_fixed) rk4_integrate(f, y, t, target, dt, &tr.stats);
        else dp54_integrate(f, y, t, target, opt, &tr.stats, &h);
        t = target;
        record(t);
    }
    return tr;
}

Trajectory evolve(const PlusSpectrum& u0, double t, const FlowConfig& cfg) {
    return evolve(u0, std::vector<double>{t}, cfg);
}

PlusSpectrum flow_map(const PlusSpectrum& u0, double t, const FlowConfig& cfg) {
    FlowConfig c = cfg;
    c.track_phase = false;
    c.track_density = false;
    return evolve(u0, t, c).states.back();
}

double reversibility_check(const PlusSpectrum& u0, double t, const FlowConfig& cfg) {
    const PlusSpectrum fwd = flow_map(u0, t, cfg);
    const PlusSpectrum back = flow_map(fwd, -t, cfg);
    const CVec a = embed(u0, cfg.cutoff);
    double acc = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) acc += std::norm(back[n] - a[n]);
    return std::sqrt(acc);
}

}  // namespace szego
