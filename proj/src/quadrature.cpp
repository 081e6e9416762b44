#include "szego/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "szego/bump.hpp"

namespace szego {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

template <class F>
QuadResult gk(F&& f, double a, double b, double tol = 1e-13, unsigned depth = 8) {
    QuadResult r;
    if (!(b > a)) return r;
    // Boost 1.74 compares the error of the reference interval against a tolerance scaled to [a, b], so narrow
    // panels never meet it; integrate on [0, 1] instead.
    const double w = b - a;
    auto g = [&](double t) { return w * f(a + w * t); };
    double err = 0.0;
    r.value = GK::integrate(g, 0.0, 1.0, depth, tol, &err);
    r.error = err;
    return r;
}

void add(QuadResult& acc, const QuadResult& r) {
    acc.value += r.value;
    acc.error += r.error;
}

// Panels over sorted breakpoints; every consecutive pair is one adaptive GK call.
// Inner integrals of second differences lose relative accuracy to cancellation, so they get a shallow depth.
template <class F>
QuadResult over(F&& f, std::vector<double> pts, double tol = 1e-13, unsigned depth = 8) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    QuadResult acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) add(acc, gk(f, pts[i], pts[i + 1], tol, depth));
    return acc;
}

// Geometric points a + (b-a) 2^{-k} (toward a) or b - (b-a) 2^{-k} (toward b).
void grade(std::vector<double>& pts, double a, double b, bool toward_a, bool toward_b, int levels = 48) {
    pts.push_back(a);
    pts.push_back(b);
    double w = b - a;
    for (int k = 1; k <= levels; ++k) {
        w *= 0.5;
        if (toward_a) pts.push_back(a + w);
        if (toward_b) pts.push_back(b - w);
    }
}

std::vector<double> profile_breaks(Profile p) {
    if (p == Profile::block) return {0.625, 0.8, 1.25, 1.6};
    return {1.25, 1.6};
}

double profile_lo(Profile p) { return p == Profile::block ? 0.625 : 0.0; }

// expm1(b L) / b with the b -> 0 limit
double expm1_ratio(double b, double L) {
    if (b == 0.0) return L;
    return std::expm1(b * L) / b;
}

// [(1+u)^a - 2 + (1-u)^a] / (a - 1)
double K_a(double a, double u) {
    if (u < 0.5) {
        // 2 sum_k a (a-2)(a-3)...(a-2k+1) / (2k)! u^{2k}
        const double u2 = u * u;
        double coef = a / 2.0;
        double pw = u2;
        double acc = 0.0;
        for (int k = 1; k < 80; ++k) {
            const double term = coef * pw;
            acc += term;
            if (std::fabs(term) <= 1e-18 * std::fabs(acc)) break;
            coef *= (a - 2.0 * k) * (a - 2.0 * k - 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
            pw *= u2;
        }
        return 2.0 * acc;
    }
    const double b = a - 1.0;
    double r = (1.0 + u) * expm1_ratio(b, std::log1p(u));
    // (1-u)^a - (1-u) -> 0 as u -> 1 since a > 0
    if (u < 1.0) r += (1.0 - u) * expm1_ratio(b, std::log1p(-u));
    return r;
}

void check_s(double s) {
    if (!(s > 0.5 && s < 1.0)) throw std::invalid_argument("I_s: s must lie in (1/2, 1)");
}

}  // namespace

double profile_h(double x, Profile p) {
    const double phi = p == Profile::block ? bump(x) - bump(2.0 * x) : bump(x);
    return x * x * phi * phi;
}

std::string to_string(Profile p) { return p == Profile::block ? "block" : "bump"; }

QuadResult profile_moment(double s, Profile p) {
    auto f = [&](double x) { return x <= 0.0 ? 0.0 : profile_h(x, p) * std::pow(x, 1.0 - 4.0 * s); };
    std::vector<double> pts = profile_breaks(p);
    if (p == Profile::bump) grade(pts, 0.0, 1.25, true, false, 160);  // x^{3-4s} is singular at 0 for s > 3/4
    pts.push_back(profile_lo(p));
    return over(f, pts);
}

double u_integrand(double s, double u) {
    const double a = 4.0 * s - 2.0;
    return std::pow(u, -2.0 * s) * (a - 1.0) * K_a(a, u);
}

QuadResult I_s_uform(double s, Profile p) {
    check_s(s);
    const double a = 4.0 * s - 2.0;
    auto f = [&](double u) { return u <= 0.0 ? 0.0 : std::pow(u, -2.0 * s) * K_a(a, u); };
    std::vector<double> pts;
    grade(pts, 0.0, 0.5, true, false);
    grade(pts, 0.5, 1.0, false, true);
    const QuadResult U = over(f, pts);
    const QuadResult X = profile_moment(s, p);
    return {X.value * U.value, std::fabs(X.value) * U.error + std::fabs(U.value) * X.error};
}

QuadResult I_s_triple(double s, Profile p) {
    check_s(s);
    const double q = 4.0 * s - 3.0;  // exponent after the sigma integration
    const double e1 = q + 1.0;
    // With A = 1 - y + tau y the sigma integral is A^q expm1(q log1p(y/A)) / (q y). The tau integral is taken
    // in w = A^{q+1}, which absorbs the A^q endpoint singularity at y -> 1.
    auto g = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double a0 = 1.0 - y;
        auto f = [&](double w) {
            const double A = std::pow(w, 1.0 / e1);
            return expm1_ratio(q, std::log1p(y / A)) / (e1 * y * y);
        };
        const double wlo = std::pow(a0, e1);
        std::vector<double> pts{wlo, 1.0};
        for (int k = 1; k <= 16; ++k) pts.push_back(wlo + (1.0 - wlo) * std::pow(0.25, k));
        const QuadResult r = over(f, pts, 1e-10, 0);
        return std::pow(y, 2.0 - 2.0 * s) * r.value;
    };
    std::vector<double> pts;
    grade(pts, 0.0, 0.5, true, false, 30);
    grade(pts, 0.5, 1.0, false, true, 30);
    const QuadResult T = over(g, pts, 1e-10, 3);
    const QuadResult X = profile_moment(s, p);
    const double pre = 4.0 * s - 2.0;
    return {pre * X.value * T.value, pre * (std::fabs(X.value) * T.error + std::fabs(T.value) * X.error)};
}

namespace {

// S_b(r) = (1-r)^b - 2 + (1+r)^b and dS_b/db for 0 <= r < 1/2 by the even power series
// 2 sum_k C(b, 2k) r^{2k}; no cancellation as r -> 0.
void second_difference_series(double b, double r, double& S, double& dS) {
    const double r2 = r * r;
    double c = b * (b - 1.0) / 2.0;  // C(b, 2)
    double dlog = 1.0 / b + 1.0 / (b - 1.0);  // d/db log C(b, 2k)
    double pw = r2;
    S = 0.0;
    dS = 0.0;
    for (int k = 1; k < 80; ++k) {
        S += c * pw;
        dS += c * dlog * pw;
        if (std::fabs(c * pw) <= 1e-18 * std::fabs(S) && k > 2) break;
        const double j0 = 2.0 * k, j1 = 2.0 * k + 1.0;
        c *= (b - j0) * (b - j1) / ((j0 + 1.0) * (j0 + 2.0));
        dlog += 1.0 / (b - j0) + 1.0 / (b - j1);
        pw *= r2;
    }
    S *= 2.0;
    dS *= 2.0;
}

// D(s) (derivative = false) or dD/ds, written with z = x + y, x, x - y so the second difference falls on the
// power weight: D = int_0^inf y^{-2s} int h(z) W(z, y) dz dy,
// W = (z-y)^{-2s} 1(z>2y) - 2 z^{-2s} 1(z>y) + (z+y)^{-2s}.
QuadResult double_integral_impl(double s, Profile p, bool derivative) {
    const double b = -2.0 * s;
    const std::vector<double> br = profile_breaks(p);
    const double lo = profile_lo(p);
    auto W = [&](double z, double y) {
        if (z > 2.0 * y) {
            double S, dS;
            second_difference_series(b, y / z, S, dS);
            const double zb = std::pow(z, b);
            if (!derivative) return zb * S;
            // d/ds = -2 d/db, plus the y^{-2s} factor handled by the caller
            return -2.0 * zb * (std::log(z) * S + dS);
        }
        double v = std::pow(z + y, b) * (derivative ? -2.0 * std::log(z + y) : 1.0);
        if (z > y) v -= 2.0 * std::pow(z, b) * (derivative ? -2.0 * std::log(z) : 1.0);
        return v;
    };
    auto inner = [&](double y) {
        if (y <= 0.0) return 0.0;
        std::vector<double> pts = br;
        pts.push_back(lo);
        for (double c : {y, 2.0 * y})
            if (c > lo && c < kBumpEdge) pts.push_back(c);
        // h(z) = z^2 on the plateau, so z^b y^2 spans many decades between 2y and 5/4
        if (p == Profile::bump)
            for (double z = 4.0 * y; z < kBumpPlateau; z *= 2.0) pts.push_back(z);
        auto f = [&](double z) { return z <= 0.0 ? 0.0 : profile_h(z, p) * W(z, y); };
        const double iw = over(f, pts, 1e-12, 6).value;
        const double yb = std::pow(y, b);
        if (!derivative) return yb * iw;
        // derivative of y^{-2s} times the plain inner integral
        auto g = [&](double z) {
            if (z <= 0.0) return 0.0;
            double v;
            if (z > 2.0 * y) {
                double S, dS;
                second_difference_series(b, y / z, S, dS);
                v = std::pow(z, b) * S;
            } else {
                v = std::pow(z + y, b);
                if (z > y) v -= 2.0 * std::pow(z, b);
            }
            return profile_h(z, p) * v;
        };
        const double plain = over(g, pts, 1e-12, 6).value;
        return yb * (iw - 2.0 * std::log(y) * plain);
    };
    std::vector<double> pts;
    // near y = 0 the integrand behaves like y^{3-4s} for the bump profile
    grade(pts, 0.0, kBumpEdge, true, false, p == Profile::bump ? 160 : 48);
    for (double c : br) {
        pts.push_back(c);
        pts.push_back(0.5 * c);
    }
    QuadResult acc = over(inner, pts, 1e-10, 5);
    // y = edge / v on (edge, inf); the integrand behaves like v^{4s-2} near v = 0
    auto tail_f = [&](double v) { return v <= 0.0 ? 0.0 : inner(kBumpEdge / v) * kBumpEdge / (v * v); };
    std::vector<double> tpts;
    grade(tpts, 0.0, 1.0, true, false, 40);
    add(acc, over(tail_f, tpts, 1e-10, 5));
    return acc;
}

}  // namespace

QuadResult double_integral(double s, Profile p) {
    check_s(s);
    return double_integral_impl(s, p, false);
}

QuadResult double_integral_ds(double s, Profile p) {
    check_s(s);
    return double_integral_impl(s, p, true);
}

QuadResult I_s_double(double s, Profile p) {
    const double q = 4.0 * s - 3.0;
    if (q == 0.0) {
        const QuadResult d = double_integral_ds(s, p);
        return {d.value / 4.0, d.error / 4.0};
    }
    const QuadResult d = double_integral(s, p);
    return {d.value / q, d.error / std::fabs(q)};
}

IsResult I_s_quadrature(double s, Profile p, double tol) {
    IsResult r;
    const QuadResult t = I_s_triple(s, p);
    r.value = t.value;
    r.error_estimate = t.error;
    r.uform = I_s_uform(s, p).value;
    r.double_form = I_s_double(s, p).value;
    const double ref = std::fabs(r.value);
    r.residual = std::max(std::fabs(r.uform - r.value), std::fabs(r.double_form - r.value)) / ref;
    r.converged = std::isfinite(r.residual) && r.residual <= tol;
    return r;
}

}  // namespace szego
