#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace szego {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Coefficients u^(0..K-1) of u(x) = sum_{0<=n<K} u^(n) e^{inx}.
// Immutable after construction; K = 0 and non-finite entries are rejected.
class PlusSpectrum {
public:
    explicit PlusSpectrum(std::size_t K);
    explicit PlusSpectrum(CVec coeffs);

    std::size_t size() const { return c_.size(); }
    const cplx& operator[](std::size_t n) const { return c_[n]; }
    // zero outside the retained range
    cplx at(long n) const;
    const CVec& coeffs() const { return c_; }

    // copy zero-padded or cut to K retained frequencies
    PlusSpectrum resized(std::size_t K) const;

private:
    CVec c_;
};

// Coefficients of frequencies lo, lo+1, ..., lo+c.size()-1.
struct TwoSidedSpectrum {
    long lo = 0;
    CVec c;
};

PlusSpectrum szego_project(const TwoSidedSpectrum& f);
PlusSpectrum sharp_truncate(const PlusSpectrum& u, std::size_t N);

bool all_finite(const CVec& v);

}  // namespace szego
