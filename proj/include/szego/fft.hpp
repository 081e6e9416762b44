#pragma once

#include <cstddef>

#include "szego/spectrum.hpp"

namespace szego {

std::size_t pow2_at_least(std::size_t n);

// Grid values u(2 pi j / M) = sum_n c[n] e^{i n x_j} for plus-frequency coefficients c (c.size() <= M).
CVec synthesize(const CVec& plus, std::size_t M);

// Two-sided coefficients (1/M) sum_j g_j e^{-i k x_j}; index k holds frequency k for k < M/2
// and k - M otherwise.
CVec analyze(const CVec& grid);

// Leading K entries of an analyzed vector, read as frequencies 0..K-1. The caller
// guarantees no negative frequency of the product wraps into that range.
CVec plus_part(const CVec& analyzed, std::size_t K);

}  // namespace szego
