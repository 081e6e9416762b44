#pragma once

#include <vector>

#include "szego/spectrum.hpp"

namespace szego {

enum class LPMode { block, much_less, less_sim, sim, approx, greater_sim, much_greater };

// Dyadic comparison conventions. M << N means M < ratio*N; ~ and the one-sided
// versions use the same ratio. M ~~ N (approx) is the fixed window N/4 <= M <= 4N.
struct DyadicRelations {
    double ratio = 1.0 / 32.0;

    static DyadicRelations strict() { return {1.0 / 1048576.0}; }

    bool much_less(long M, long N) const;
    bool less_sim(long M, long N) const;
    bool sim(long M, long N) const;
    bool approx(long M, long N) const;
    bool greater_sim(long M, long N) const;
    bool much_greater(long M, long N) const;
    bool holds(LPMode mode, long M, long N) const;
};

bool is_dyadic(long N);

// Multiplier value at frequency n >= 0: sum of phi_M(n) over M in relation `mode` with N.
double lp_symbol(long n, long N, LPMode mode, const DyadicRelations& rel = {});

PlusSpectrum lp_project(const PlusSpectrum& u, long N, LPMode mode = LPMode::block,
                        const DyadicRelations& rel = {});
CVec lp_project(const CVec& u, long N, LPMode mode = LPMode::block,
                const DyadicRelations& rel = {});

// Dyadic N whose block meets [0, K).
std::vector<long> dyadic_blocks(std::size_t K);

}  // namespace szego
