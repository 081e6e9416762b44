#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "szego/gaussian_measure.hpp"

namespace szego {

// One (sample, N, t, quantity, value) row. sample = -1 marks ensemble-level values.
struct ObservableRecord {
    long sample = -1;
    long N = 0;
    double t = 0.0;
    std::string quantity;
    double value = 0.0;
};

struct FitRecord {
    std::string quantity;
    double s = 0.0;
    double value = 0.0;  // fitted exponent
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double se = 0.0;
};

struct CheckRecord {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "in", "==" (informational)
    bool passed = false;
    bool statistical = false;  // eligible for the 4x rerun
};

// Scalar or text parameter, kept in insertion order for the manifest.
struct Parameter {
    std::string key;
    std::string text;
    std::vector<double> values;
    bool is_text = false;
};

struct ExperimentReport {
    std::string name;
    std::vector<Parameter> parameters;
    std::vector<ObservableRecord> rows;
    std::vector<FitRecord> fits;
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;
    bool degenerate = false;  // nothing to test at these parameters (e.g. s = 3/4)
    bool rerun = false;       // statistical checks were repeated with 4x samples
    double seconds = 0.0;

    bool passed() const;
    void param(const std::string& key, double v);
    void param(const std::string& key, const std::vector<double>& v);
    void param(const std::string& key, const std::string& v);
    void row(long sample, long N, double t, const std::string& q, double v);
    CheckRecord& check(const std::string& name, double measured, const std::string& relation, double threshold,
                       bool statistical);
};

// Inputs shared by all experiments. Fields an experiment does not use are ignored; zero/empty/NaN means the
// experiment's default (listed in ExperimentInfo::defaults).
struct ExperimentOptions {
    EnsembleSpec ensemble;         // seed, sample_count, s, cutoffs, times, galerkin_factor
    std::vector<double> s_values;  // empty: experiment default
    double t = std::numeric_limits<double>::quiet_NaN();  // NaN: experiment default
    double p = 0.0;             // Lebesgue exponent (density-lp, paradec-scaling)
    double sigma = -1.0;        // H^sigma index; < 0: s - 1/2 - 0.05
    double radius_factor = 0.0; // density-lp: R = factor * median ||u||_{H^sigma}
    double rtol = 0.0;
    double atol = 0.0;
    bool rerun_on_failure = true;
    bool samples_set = false;   // ensemble.sample_count was given explicitly
    bool cutoffs_set = false;
    bool times_set = false;
    bool galerkin_set = false;
    std::size_t threads = 0;
};

struct ExperimentInfo {
    std::string name;
    std::string summary;
    std::string defaults;
};

const std::vector<ExperimentInfo>& list_experiments();
bool has_experiment(const std::string& name);

// Defaults filled in, as the experiment will run them. Throws std::invalid_argument for unknown names or
// invalid options.
ExperimentOptions resolve_options(const std::string& name, ExperimentOptions opt);

// Runs the experiment; failed statistical checks are repeated once with 4x samples when allowed.
ExperimentReport run_experiment(const std::string& name, const ExperimentOptions& opt);

// Acceptance thresholds, one declarative table.
struct Thresholds {
    static constexpr double conservation_drift = 1e-8;
    static constexpr double single_mode_drift = 1e-12;
    static constexpr double rk4_order = 4.0;
    static constexpr double rk4_order_tol = 0.3;
    static constexpr double mean_se = 3.0;
    static constexpr double fn_slope_tol = 0.3;
    static constexpr double gn_ratio_tol = 0.15;
    static constexpr double transition_fraction = 0.9;
    static constexpr double taylor_fraction = 0.3;
    static constexpr double q_slope_high = 0.2;   // s > 1: exponent <= 0.2
    static constexpr double q_slope_margin = 0.3; // s < 1: exponent >= 2 - 2s - 0.3
    static constexpr double density_rel = 1e-6;
    static constexpr double liouville_se = 3.0;
    static constexpr double density_ratio_lo = 0.7;
    static constexpr double density_ratio_hi = 1.4;
    static constexpr double paradec_margin = 0.3;
};

}  // namespace szego
