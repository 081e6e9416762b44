#pragma once

#include "szego/spectrum.hpp"

namespace szego {

// Exact Pi(a * conj(b) * c) on a zero-padded grid; returns frequencies 0 .. Ka+Kc-2.
// Aliasing is excluded by taking the grid size M >= Ka + Kb + Kc.
CVec triple_product(const CVec& a, const CVec& b, const CVec& c);

// Pi(|u|^2 u) on a grid of size pow2 >= padding * K (padding >= 3 keeps it exact);
// result covers frequencies 0 .. 3K-3.
CVec cubic_term(const CVec& u, int padding = 4);
PlusSpectrum cubic_szego_term(const PlusSpectrum& u, int padding = 4);

}  // namespace szego
