#include "szego/paralinear.hpp"

#include <cmath>
#include <stdexcept>

#include "szego/bump.hpp"
#include "szego/fft.hpp"
#include "szego/norms.hpp"
#include "szego/products.hpp"

namespace szego {

namespace {

CVec trimmed(const CVec& v) {
    std::size_t k = v.size();
    while (k > 1 && v[k - 1] == cplx{}) --k;
    return CVec(v.begin(), v.begin() + static_cast<long>(k));
}

bool is_zero(const CVec& v) {
    for (const auto& z : v)
        if (z != cplx{}) return false;
    return true;
}

// Pi_LLH(u, u, .) for fixed u: grid weights |P_{<<N3} u|^2 per block, reused across w.
class LLHOperator {
public:
    LLHOperator(const CVec& u, std::size_t Kw, const DyadicRelations& rel) : Kw_(Kw) {
        M_ = pow2_at_least(4 * std::max(Kw, u.size()));
        for (long N3 : dyadic_blocks(Kw)) {
            const CVec low = lp_project(u, N3, LPMode::much_less, rel);
            if (is_zero(low)) continue;
            CVec g = synthesize(trimmed(low), M_);
            std::vector<double> w(M_);
            for (std::size_t j = 0; j < M_; ++j) w[j] = std::norm(g[j]);
            blocks_.push_back(N3);
            weights_.push_back(std::move(w));
        }
    }

    // pi_{Kw} Pi_LLH(u, u, w)
    CVec apply(const CVec& w) const {
        CVec acc(M_);
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            const CVec hi = lp_project(w, blocks_[b], LPMode::block);
            if (is_zero(hi)) continue;
            const CVec g = synthesize(trimmed(hi), M_);
            for (std::size_t j = 0; j < M_; ++j) acc[j] += weights_[b][j] * g[j];
        }
        if (blocks_.empty()) return CVec(Kw_);
        return plus_part(analyze(acc), Kw_);
    }

private:
    std::size_t Kw_;
    std::size_t M_ = 0;
    std::vector<long> blocks_;
    std::vector<std::vector<double>> weights_;
};

}  // namespace

PlusSpectrum paraproduct_LLH(const PlusSpectrum& f, const PlusSpectrum& g, const PlusSpectrum& w,
                             const DyadicRelations& rel) {
    CVec out(f.size() + w.size() - 1);
    for (long N3 : dyadic_blocks(w.size())) {
        const CVec hi = lp_project(w.coeffs(), N3, LPMode::block);
        if (is_zero(hi)) continue;
        const CVec fl = lp_project(f.coeffs(), N3, LPMode::much_less, rel);
        const CVec gl = lp_project(g.coeffs(), N3, LPMode::much_less, rel);
        if (is_zero(fl) || is_zero(gl)) continue;
        const CVec a = trimmed(fl), b = trimmed(gl), c = trimmed(hi);
        const CVec t = triple_product(a, b, c);
        for (std::size_t n = 0; n < t.size() && n < out.size(); ++n) out[n] += t[n];
    }
    return PlusSpectrum(std::move(out));
}

double para_local_time(const PlusSpectrum& u0, double s, double p) {
    const double R = besov_norm(u0, s - 0.5, p, INFINITY);
    return std::min(1.0, 0.5 / (1.0 + std::pow(R, 5)));
}

ParaTrajectory evolve_para_system(const PlusSpectrum& u0, const std::vector<double>& times,
                                  const FlowConfig& cfg, const ParaConfig& para) {
    cfg.validate();
    const std::size_t K = cfg.cutoff;
    if (u0.size() > K)
        for (std::size_t n = K; n < u0.size(); ++n)
            if (u0[n] != cplx{}) throw std::invalid_argument("evolve_para_system: datum exceeds cutoff");
    ParaTrajectory out;
    out.local_time = para_local_time(u0, para.s, para.p);
    if (para.enforce_local_time)
        for (double t : times)
            if (std::fabs(t) > out.local_time)
                throw std::invalid_argument("evolve_para_system: time outside the local window");

    const int pad = cfg.padding_factor;
    const DyadicRelations rel = para.relations;
    Rhs f = [&](double, const CVec& y, CVec& dy) {
        const CVec u(y.begin(), y.begin() + static_cast<long>(K));
        const CVec X(y.begin() + static_cast<long>(K), y.begin() + static_cast<long>(2 * K));
        const CVec Y(y.begin() + static_cast<long>(2 * K), y.end());
        const CVec c = cubic_term(u, pad);
        const LLHOperator llh(u, K, rel);
        const CVec lx = llh.apply(X), lu = llh.apply(u), ly = llh.apply(Y);
        const cplx mi(0.0, -1.0);
        for (std::size_t n = 0; n < K; ++n) {
            dy[n] = mi * c[n];
            dy[K + n] = mi * 2.0 * lx[n];
            dy[2 * K + n] = mi * (c[n] - 2.0 * lu[n] + 2.0 * ly[n]);
        }
    };

    CVec y(3 * K);
    for (std::size_t n = 0; n < u0.size() && n < K; ++n) y[n] = y[K + n] = u0[n];

    auto record = [&](double t) {
        CVec u(y.begin(), y.begin() + static_cast<long>(K));
        CVec X(y.begin() + static_cast<long>(K), y.begin() + static_cast<long>(2 * K));
        CVec Y(y.begin() + static_cast<long>(2 * K), y.end());
        double err = 0.0;
        for (std::size_t n = 0; n < K; ++n) err += std::norm(Y[n] - (u[n] - X[n]));
        const double scale = std::max(1.0, std::sqrt(l2_norm_sq(u)));
        out.max_consistency_error = std::max(out.max_consistency_error, std::sqrt(err) / scale);
        out.times.push_back(t);
        out.u.emplace_back(std::move(u));
        out.X.emplace_back(std::move(X));
        out.Y.emplace_back(std::move(Y));
    };
    record(0.0);

    AdaptiveOptions opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(u0);
    double h = 0.0, t = 0.0;
    for (double target : times) {
        if (target == 0.0 && t == 0.0) continue;
        if (cfg.integrator == Integrator::rk4_fixed) rk4_integrate(f, y, t, target, dt);
        else dp54_integrate(f, y, t, target, opt, nullptr, &h);
        t = target;
        record(t);
    }
    return out;
}

PlusSpectrum profile_XN(const Trajectory& traj, const PlusSpectrum& u0, long N, double t) {
    if (!traj.has_phase()) throw std::invalid_argument("profile_XN: trajectory has no phase track");
    if (traj.phase_block != N) throw std::invalid_argument("profile_XN: phase track belongs to another block");
    const std::vector<double>& theta = traj.phase[traj.index_of(t)];
    const std::size_t M = traj.phase_grid;
    CVec band = lp_project(u0.coeffs(), N, LPMode::approx);
    band = trimmed(band);
    if (2 * band.size() > M) throw std::invalid_argument("profile_XN: phase grid too coarse for P_~N u0");
    CVec g = synthesize(band, M);
    for (std::size_t j = 0; j < M; ++j) g[j] *= std::polar(1.0, -2.0 * theta[j]);
    return PlusSpectrum(plus_part(analyze(g), M / 2));
}

PlusSpectrum remainder_vN(const PlusSpectrum& u_t, const PlusSpectrum& XN, long N) {
    const std::size_t K = std::max(u_t.size(), XN.size());
    const CVec a = lp_project(u_t.resized(K).coeffs(), N, LPMode::block);
    const CVec b = lp_project(XN.resized(K).coeffs(), N, LPMode::block);
    CVec out(K);
    for (std::size_t n = 0; n < K; ++n) out[n] = a[n] - b[n];
    return PlusSpectrum(std::move(out));
}

}  // namespace szego
