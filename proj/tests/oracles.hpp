#pragma once

// Direct-sum reference implementations. Deliberately naive: loops over every admissible frequency tuple, no
// FFTs, no shared code with the fast paths beyond the bump function itself.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "szego/bump.hpp"
#include "szego/spectrum.hpp"

namespace oracle {

using szego::cplx;
using szego::CVec;

inline cplx at(const CVec& u, long n) { return n >= 0 && n < static_cast<long>(u.size()) ? u[n] : cplx{}; }

// Pi(a conj(b) c)(n) = sum_{n1 - n2 + n3 = n} a(n1) conj(b(n2)) c(n3), all frequencies >= 0
inline CVec triple(const CVec& a, const CVec& b, const CVec& c) {
    const long top = static_cast<long>(a.size() + c.size()) - 1;
    CVec out(top, cplx{});
    for (long n1 = 0; n1 < static_cast<long>(a.size()); ++n1)
        for (long n2 = 0; n2 < static_cast<long>(b.size()); ++n2)
            for (long n3 = 0; n3 < static_cast<long>(c.size()); ++n3) {
                const long n = n1 - n2 + n3;
                if (n >= 0 && n < top) out[n] += a[n1] * std::conj(b[n2]) * c[n3];
            }
    return out;
}

inline CVec cubic(const CVec& u) { return triple(u, u, u); }

inline double jb2s(long n, double s) { return std::pow(1.0 + static_cast<double>(n) * n, s); }

// Q_{pi_N}(u) as the symmetrised quadrilinear form (i/2) sum psi_s u1 conj(u2) u3 conj(u4) over n_i < N
inline double Q_pi(const CVec& u, double s, long N) {
    cplx acc{};
    for (long n1 = 0; n1 < N; ++n1)
        for (long n2 = 0; n2 < N; ++n2)
            for (long n3 = 0; n3 < N; ++n3) {
                const long n4 = n1 - n2 + n3;
                if (n4 < 0 || n4 >= N) continue;
                const double psi = jb2s(n1, s) - jb2s(n2, s) + jb2s(n3, s) - jb2s(n4, s);
                acc += psi * at(u, n1) * std::conj(at(u, n2)) * at(u, n3) * std::conj(at(u, n4));
            }
    return (cplx(0.0, 0.5) * acc).real();
}

// m^2 phi_N(m)^2 built from the bump directly
inline double H(long m, long N) {
    if (m < 0) return 0.0;
    const double x = static_cast<double>(m);
    const double phi = N == 1 ? szego::bump(x) : szego::bump(x / N) - szego::bump(2.0 * x / N);
    return x * x * phi * phi;
}

// (i/2) sum_{n1 - n2 + n3 - n4 = 0} Psi_N f1 conj(f2) f3 conj(f4)
inline cplx Q_N(const CVec& f1, const CVec& f2, const CVec& f3, const CVec& f4, long N) {
    cplx acc{};
    for (long n1 = 0; n1 < static_cast<long>(f1.size()); ++n1)
        for (long n2 = 0; n2 < static_cast<long>(f2.size()); ++n2)
            for (long n3 = 0; n3 < static_cast<long>(f3.size()); ++n3) {
                const long n4 = n1 - n2 + n3;
                if (n4 < 0 || n4 >= static_cast<long>(f4.size())) continue;
                const double psi = H(n1, N) - H(n2, N) + H(n3, N) - H(n4, N);
                if (psi == 0.0) continue;
                acc += psi * f1[n1] * std::conj(f2[n2]) * f3[n3] * std::conj(f4[n4]);
            }
    return cplx(0.0, 0.5) * acc;
}

// N^{4s-4} times the second time derivative of sum H |u|^2 for u' = -i Pi(|u|^2 u), through the quadrilinear
// form with the velocity inserted in each slot
inline double G_N(const CVec& u, double s, long N) {
    CVec v = cubic(u);
    for (cplx& z : v) z *= cplx(0.0, -1.0);
    CVec uu = u;
    uu.resize(v.size(), cplx{});
    const cplx sum = Q_N(v, uu, uu, uu, N) + Q_N(uu, v, uu, uu, N) + Q_N(uu, uu, v, uu, N) + Q_N(uu, uu, uu, v, N);
    return std::pow(static_cast<double>(N), 4.0 * s - 4.0) * sum.real();
}

inline CVec random_coeffs(std::mt19937_64& rng, std::size_t K, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale);
    CVec u(K);
    for (cplx& z : u) z = cplx(nd(rng), nd(rng));
    return u;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
    double m = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        m = std::max(m, std::abs(at(a, static_cast<long>(i)) - at(b, static_cast<long>(i))));
    return m;
}

inline double max_abs(const CVec& a) {
    double m = 0.0;
    for (const cplx& z : a) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace oracle
