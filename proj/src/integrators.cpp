#include "szego/integrators.hpp"

#include <algorithm>
#include <cmath>

namespace szego {

namespace {

void axpy_into(CVec& out, const CVec& y, double h, std::initializer_list<std::pair<double, const CVec*>> terms) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc{};
        for (const auto& [c, k] : terms) acc += c * (*k)[i];
        out[i] = y[i] + h * acc;
    }
}

}  // namespace

void rk4_integrate(const Rhs& f, CVec& y, double t0, double t1, double dt, StepStats* stats) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4: dt must be positive");
    const double span = t1 - t0;
    if (span == 0.0) return;
    const auto steps = static_cast<std::size_t>(std::ceil(std::fabs(span) / dt - 1e-12));
    const double h = span / static_cast<double>(std::max<std::size_t>(steps, 1));
    const std::size_t n = y.size();
    CVec k1(n), k2(n), k3(n), k4(n), tmp(n);
    double t = t0;
    for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s) {
        f(t, y, k1);
        axpy_into(tmp, y, 0.5 * h, {{1.0, &k1}});
        f(t + 0.5 * h, tmp, k2);
        axpy_into(tmp, y, 0.5 * h, {{1.0, &k2}});
        f(t + 0.5 * h, tmp, k3);
        axpy_into(tmp, y, h, {{1.0, &k3}});
        f(t + h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t = t0 + static_cast<double>(s + 1) * h;
        if (stats) {
            stats->accepted += 1;
            stats->rhs_evals += 4;
        }
    }
}

void dp54_integrate(const Rhs& f, CVec& y, double t0, double t1, const AdaptiveOptions& opt,
                    StepStats* stats, double* hio) {
    if (!(opt.rtol > 0.0) || !(opt.atol > 0.0)) throw std::invalid_argument("dp54: tolerances must be positive");
    const double span = t1 - t0;
    if (span == 0.0) return;
    const double dir = span > 0 ? 1.0 : -1.0;
    const std::size_t n = y.size();

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    CVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
    f(t0, y, k1);
    if (stats) stats->rhs_evals += 1;

    double h = hio && *hio > 0.0 ? *hio : opt.h_init;
    if (!(h > 0.0)) {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = opt.atol + opt.rtol * std::abs(y[i]);
            d0 += std::norm(y[i]) / (sc * sc);
            d1 += std::norm(k1[i]) / (sc * sc);
        }
        d0 = std::sqrt(d0 / n);
        d1 = std::sqrt(d1 / n);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    }
    h = std::min(h, std::fabs(span));
    const double h_min = opt.h_min_rel * std::fabs(span);

    double t = t0;
    std::size_t steps = 0;
    bool last_rejected = false;
    double h_want = h;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > opt.max_steps) throw StepSizeUnderflow("dp54: step budget exhausted");
        bool final_step = false;
        h_want = h;
        if (h >= std::fabs(t1 - t)) {
            h = std::fabs(t1 - t);
            final_step = true;
        }
        const double hs = dir * h;
        axpy_into(tmp, y, hs, {{a21, &k1}});
        f(t + c2 * hs, tmp, k2);
        axpy_into(tmp, y, hs, {{a31, &k1}, {a32, &k2}});
        f(t + c3 * hs, tmp, k3);
        axpy_into(tmp, y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        f(t + c4 * hs, tmp, k4);
        axpy_into(tmp, y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        f(t + c5 * hs, tmp, k5);
        axpy_into(tmp, y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        f(t + hs, tmp, k6);
        axpy_into(ynew, y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        f(t + hs, ynew, k7);
        if (stats) stats->rhs_evals += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += std::norm(e) / (sc * sc);
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t = final_step ? t1 : t + hs;
            y.swap(ynew);
            k1.swap(k7);
            if (stats) stats->accepted += 1;
            double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
            h = final_step ? std::max(h_want, h * fac) : h * fac;
            last_rejected = false;
        } else {
            if (stats) stats->rejected += 1;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            last_rejected = true;
            if (h < h_min) throw StepSizeUnderflow("dp54: step size underflow");
        }
    }
    if (hio) *hio = h;
}

}  // namespace szego
