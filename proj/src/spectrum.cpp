#include "szego/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace szego {

bool all_finite(const CVec& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

PlusSpectrum::PlusSpectrum(std::size_t K) : c_(K) {
    if (K == 0) throw std::invalid_argument("PlusSpectrum: K must be positive");
}

PlusSpectrum::PlusSpectrum(CVec coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("PlusSpectrum: K must be positive");
    if (!all_finite(c_)) throw std::invalid_argument("PlusSpectrum: non-finite coefficient");
}

cplx PlusSpectrum::at(long n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= c_.size()) return {};
    return c_[static_cast<std::size_t>(n)];
}

PlusSpectrum PlusSpectrum::resized(std::size_t K) const {
    CVec c(K);
    for (std::size_t n = 0; n < K && n < c_.size(); ++n) c[n] = c_[n];
    return PlusSpectrum(std::move(c));
}

PlusSpectrum szego_project(const TwoSidedSpectrum& f) {
    const long hi = f.lo + static_cast<long>(f.c.size());
    if (hi <= 0) return PlusSpectrum(1);
    CVec out(static_cast<std::size_t>(hi));
    for (long n = std::max(0L, f.lo); n < hi; ++n)
        out[static_cast<std::size_t>(n)] = f.c[static_cast<std::size_t>(n - f.lo)];
    return PlusSpectrum(std::move(out));
}

PlusSpectrum sharp_truncate(const PlusSpectrum& u, std::size_t N) {
    if (N == 0) throw std::invalid_argument("sharp_truncate: N must be >= 1");
    CVec c = u.coeffs();
    for (std::size_t n = N; n < c.size(); ++n) c[n] = 0.0;
    return PlusSpectrum(std::move(c));
}

}  // namespace szego
