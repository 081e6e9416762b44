#pragma once

#include <cstddef>
#include <vector>

#include "szego/integrators.hpp"
#include "szego/littlewood_paley.hpp"
#include "szego/spectrum.hpp"

namespace szego {

enum class Integrator { rk4_fixed, dp54_adaptive };

struct FlowConfig {
    std::size_t cutoff = 0;  // pi_N truncation: frequencies 0..cutoff-1
    Integrator integrator = Integrator::dp54_adaptive;
    double dt = 0.0;  // rk4 step; 0 picks default_dt(u0)
    double rtol = 1e-10;
    double atol = 1e-12;
    int padding_factor = 4;

    // Theta(t, x) = int_0^t |P_{<<N} u(tau, x)|^2 dtau on a grid, integrated with the state.
    bool track_phase = false;
    long phase_block = 0;         // N in P_{<<N}; 0 means no projection
    std::size_t phase_grid = 0;   // 0: pow2 >= padding_factor * cutoff
    DyadicRelations relations{};

    // Accumulate int_0^t Q_{pi_N}(u(tau)) dtau with weight <n>^{2 density_s}.
    bool track_density = false;
    double density_s = 0.0;

    void validate() const;
};

struct ConservedValues {
    double mass = 0.0;         // ||u||_{L^2}^2
    double momentum = 0.0;     // sum n |u^(n)|^2
    double hamiltonian = 0.0;  // ||u||_{L^4}^4
};

struct Trajectory {
    std::vector<double> times;
    std::vector<PlusSpectrum> states;
    std::vector<std::vector<double>> phase;  // empty unless track_phase
    std::vector<double> density_integral;    // empty unless track_density
    std::vector<ConservedValues> conserved_log;
    StepStats stats;
    std::size_t phase_grid = 0;
    long phase_block = 0;

    bool has_phase() const { return !phase.empty(); }
    std::size_t index_of(double t) const;  // exact match required
};

ConservedValues conserved(const CVec& u);

// -i pi_N Pi(|u|^2 u)
PlusSpectrum rhs_truncated(const PlusSpectrum& u, std::size_t N, int padding = 4);

// 0.1 / (1 + ||u0||_{L^inf}^2) on a 4x grid
double default_dt(const PlusSpectrum& u0);

// Record at t = 0 and at each requested time (all of one sign, ordered away from 0).
Trajectory evolve(const PlusSpectrum& u0, const std::vector<double>& times, const FlowConfig& cfg);
Trajectory evolve(const PlusSpectrum& u0, double t, const FlowConfig& cfg);
// final state only
PlusSpectrum flow_map(const PlusSpectrum& u0, double t, const FlowConfig& cfg);

// ||Phi_{-t}(Phi_t(u0)) - u0||_{L^2}
double reversibility_check(const PlusSpectrum& u0, double t, const FlowConfig& cfg);

}  // namespace szego
