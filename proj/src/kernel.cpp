#include "szego/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "szego/bump.hpp"
#include "szego/littlewood_paley.hpp"
#include "szego/multipliers.hpp"

namespace szego {

double A_N_kernel(long n, double s, long N) {
    if (n < 0) throw std::invalid_argument("A_N_kernel: n must be nonnegative");
    if (!is_dyadic(N)) throw std::invalid_argument("A_N_kernel: N must be dyadic");
    if (!(s > 0.5)) throw std::invalid_argument("A_N_kernel: s must exceed 1/2");

    const long top = static_cast<long>(std::ceil(block_support_hi(N))) + 1;  // H(m) = 0 for m >= top
    const long L = 4 * (top + n) + 64;                                       // explicit range for the lag sums
    std::vector<double> w(static_cast<std::size_t>(L + top + n + 2));
    for (std::size_t m = 0; m < w.size(); ++m) w[m] = jb_pow(static_cast<double>(m), -2.0 * s);
    std::vector<double> H(static_cast<std::size_t>(top + n + 1));
    for (std::size_t m = 0; m < H.size(); ++m) H[m] = block_energy_symbol(static_cast<long>(m), N);
    auto Hat = [&](long m) { return m >= 0 && m < static_cast<long>(H.size()) ? H[static_cast<std::size_t>(m)] : 0.0; };

    // sum_{n<n2<n1} w1 w2 [H(n1+n2-n) - 2 H(n1)]
    double sa = 0.0;
    double prefix = 0.0;  // sum_{n<n2<n1} w(n2)
    for (long n1 = n + 1; n1 < top + n; ++n1) {
        const double w1 = w[static_cast<std::size_t>(n1)];
        sa -= 2.0 * Hat(n1) * w1 * prefix;
        double inner = 0.0;
        for (long n2 = n + 1; n2 < n1 && n1 + n2 - n < top; ++n2)
            inner += w[static_cast<std::size_t>(n2)] * Hat(n1 + n2 - n);
        sa += w1 * inner;
        prefix += w[static_cast<std::size_t>(n1)];
    }

    // sum_{d>=1} H(d+n) T(d), T(d) = sum_{m>n} w(m) w(m+d)
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto wf = [s](double x) { return std::pow(1.0 + x * x, -s); };
    auto dwf = [s](double x) { return -2.0 * s * x * std::pow(1.0 + x * x, -s - 1.0); };
    double sb = 0.0;
    for (long d = 1; d + n < top; ++d) {
        const double hd = Hat(d + n);
        if (hd == 0.0) continue;
        double T = 0.0;
        for (long m = n + 1; m <= L; ++m) T += w[static_cast<std::size_t>(m)] * w[static_cast<std::size_t>(m + d)];
        const double dd = static_cast<double>(d), x0 = static_cast<double>(L);
        auto f = [&](double x) { return wf(x) * wf(x + dd); };
        const double integral = GK::integrate(f, x0, std::numeric_limits<double>::infinity(), 15, 1e-14);
        const double fprime = dwf(x0) * wf(x0 + dd) + wf(x0) * dwf(x0 + dd);
        T += integral - 0.5 * f(x0) - fprime / 12.0;
        sb += hd * T;
    }
    return std::pow(static_cast<double>(N), 4.0 * s - 4.0) * (sa + sb);
}

}  // namespace szego
