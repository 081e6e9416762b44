#include "szego/littlewood_paley.hpp"

#include <stdexcept>

#include "szego/bump.hpp"

namespace szego {

bool DyadicRelations::much_less(long M, long N) const { return M < ratio * N; }
bool DyadicRelations::less_sim(long M, long N) const { return M <= N / ratio; }
bool DyadicRelations::sim(long M, long N) const { return ratio * N <= M && M <= N / ratio; }
bool DyadicRelations::approx(long M, long N) const { return 4 * M >= N && M <= 4 * N; }
bool DyadicRelations::greater_sim(long M, long N) const { return M >= ratio * N; }
bool DyadicRelations::much_greater(long M, long N) const { return M > N / ratio; }

bool DyadicRelations::holds(LPMode mode, long M, long N) const {
    switch (mode) {
        case LPMode::block: return M == N;
        case LPMode::much_less: return much_less(M, N);
        case LPMode::less_sim: return less_sim(M, N);
        case LPMode::sim: return sim(M, N);
        case LPMode::approx: return approx(M, N);
        case LPMode::greater_sim: return greater_sim(M, N);
        case LPMode::much_greater: return much_greater(M, N);
    }
    return false;
}

bool is_dyadic(long N) { return N >= 1 && (N & (N - 1)) == 0; }

double lp_symbol(long n, long N, LPMode mode, const DyadicRelations& rel) {
    if (!is_dyadic(N)) throw std::invalid_argument("lp_symbol: N must be a power of two");
    if (mode == LPMode::block) return block_symbol(N, static_cast<double>(n));
    // only blocks with 5M/8 < n < 8M/5 (or M = 1) contribute
    double acc = 0.0;
    for (long M = 1; 5 * M < 8 * (n + 1); M *= 2) {
        if (!rel.holds(mode, M, N)) continue;
        acc += block_symbol(M, static_cast<double>(n));
    }
    return acc;
}

CVec lp_project(const CVec& u, long N, LPMode mode, const DyadicRelations& rel) {
    if (!is_dyadic(N)) throw std::invalid_argument("lp_project: N must be a power of two");
    CVec out(u.size());
    for (std::size_t n = 0; n < u.size(); ++n) {
        if (u[n] == cplx{}) continue;
        const double m = lp_symbol(static_cast<long>(n), N, mode, rel);
        out[n] = m * u[n];
    }
    return out;
}

PlusSpectrum lp_project(const PlusSpectrum& u, long N, LPMode mode, const DyadicRelations& rel) {
    return PlusSpectrum(lp_project(u.coeffs(), N, mode, rel));
}

std::vector<long> dyadic_blocks(std::size_t K) {
    std::vector<long> out;
    for (long N = 1; block_support_lo(N) < static_cast<double>(K) - 1.0 || N == 1; N *= 2) out.push_back(N);
    return out;
}

}  // namespace szego
