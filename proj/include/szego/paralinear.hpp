#pragma once

#include <vector>

#include "szego/flow.hpp"
#include "szego/littlewood_paley.hpp"
#include "szego/spectrum.hpp"

namespace szego {

// sum over N3 of Pi(P_{<<N3} f * conj(P_{<<N3} g) * P_{N3} w); frequencies 0 .. Kf+Kw-2.
PlusSpectrum paraproduct_LLH(const PlusSpectrum& f, const PlusSpectrum& g, const PlusSpectrum& w,
                             const DyadicRelations& rel = {});

// T = min(1, 0.5 / (1 + R^5)) with R = ||u0||_{B^{s-1/2}_{p,inf}}.
double para_local_time(const PlusSpectrum& u0, double s, double p);

struct ParaConfig {
    double s = 0.7;
    double p = 12.0;
    bool enforce_local_time = true;
    DyadicRelations relations{};
};

struct ParaTrajectory {
    std::vector<double> times;
    std::vector<PlusSpectrum> u, X, Y;
    double max_consistency_error = 0.0;  // max_t ||Y - (u - X)||_{L^2} / max(1, ||u||_{L^2})
    double local_time = 0.0;
};

// i u_t = pi_K Pi(|u|^2 u), i X_t = 2 pi_K Pi_LLH(u, u, X),
// i Y_t = pi_K [Pi(|u|^2 u) - 2 Pi_LLH(u, u, u) + 2 Pi_LLH(u, u, Y)], (u, X, Y)(0) = (u0, u0, 0).
ParaTrajectory evolve_para_system(const PlusSpectrum& u0, const std::vector<double>& times,
                                  const FlowConfig& cfg, const ParaConfig& para);

// exp(-2i Theta(t)) P_{~~N} u0 formed on the phase grid, then Szego projected.
// `traj` must come from evolve() of P_{<<N} u0 with track_phase and phase_block = N.
PlusSpectrum profile_XN(const Trajectory& traj, const PlusSpectrum& u0, long N, double t);

// P_N u(t) - P_N Pi(X_N)
PlusSpectrum remainder_vN(const PlusSpectrum& u_t, const PlusSpectrum& XN, long N);

}  // namespace szego
