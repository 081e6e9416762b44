#include "szego/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace szego {

namespace {

// FFTW planning is not thread safe; execution through the new-array API is.
class PlanCache {
public:
    fftw_plan get(std::size_t M, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(M, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        auto* a = fftw_alloc_complex(M);
        auto* b = fftw_alloc_complex(M);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(M), a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(a);
        fftw_free(b);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }
    ~PlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_complex* raw(CVec& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

}  // namespace

std::size_t pow2_at_least(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

CVec synthesize(const CVec& plus, std::size_t M) {
    if (plus.size() > M) throw std::invalid_argument("synthesize: grid smaller than spectrum");
    CVec in(M), out(M);
    std::copy(plus.begin(), plus.end(), in.begin());
    fftw_execute_dft(cache().get(M, FFTW_BACKWARD), raw(in), raw(out));
    return out;
}

CVec analyze(const CVec& grid) {
    const std::size_t M = grid.size();
    CVec in(grid), out(M);
    fftw_execute_dft(cache().get(M, FFTW_FORWARD), raw(in), raw(out));
    const double inv = 1.0 / static_cast<double>(M);
    for (auto& z : out) z *= inv;
    return out;
}

CVec plus_part(const CVec& analyzed, std::size_t K) {
    if (K > analyzed.size()) throw std::invalid_argument("plus_part: K exceeds grid size");
    return CVec(analyzed.begin(), analyzed.begin() + static_cast<long>(K));
}

}  // namespace szego
