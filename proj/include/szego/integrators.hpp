#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "szego/spectrum.hpp"

namespace szego {

using Rhs = std::function<void(double t, const CVec& y, CVec& dy)>;

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

struct AdaptiveOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 0.0;       // 0: pick from the first derivative
    double h_min_rel = 1e-14;  // relative to |t1 - t0|
    std::size_t max_steps = 10000000;
};

class StepSizeUnderflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Classical RK4 from t0 to t1 with ceil(|t1 - t0| / dt) equal steps (t1 < t0 allowed).
void rk4_integrate(const Rhs& f, CVec& y, double t0, double t1, double dt, StepStats* stats = nullptr);

// Dormand-Prince 5(4) with RMS error control. *h carries the step size across calls when given.
void dp54_integrate(const Rhs& f, CVec& y, double t0, double t1, const AdaptiveOptions& opt,
                    StepStats* stats = nullptr, double* h = nullptr);

}  // namespace szego
