#pragma once

#include <array>
#include <cstdint>

namespace szego {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

// Uniform on (0, 1] from 64 random bits.
double uniform_open_closed(std::uint64_t bits);

}  // namespace szego
