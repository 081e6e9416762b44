#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/experiments.hpp"
#include "szego/flow.hpp"

namespace szego {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr const char* kCsvSchema = "sample,N,t,quantity,value/v1";

struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

// Header `sample,N,t,quantity,value`; quantity names are quoted when they contain a comma or quote.
void write_csv(const std::string& path, const std::vector<ObservableRecord>& rows);
std::vector<ObservableRecord> read_csv(const std::string& path);

// FNV-1a over the textual definition of phi and its values on a fixed grid of [0, 2].
std::string phi_hash();

nlohmann::json environment_fingerprint();
nlohmann::json options_to_json(const ExperimentOptions& opt);
nlohmann::json report_to_json(const ExperimentReport& r);

// <dir>/<name>.manifest.json with status "running", written before any computation.
void write_manifest_pending(const std::string& dir, const std::string& name, const ExperimentOptions& resolved);
// Final manifest (status passed / failed / degenerate) and <dir>/<name>.csv.
void write_results(const std::string& dir, const ExperimentReport& r, const ExperimentOptions& resolved);

// Trajectory dump: CSV rows (t, n, re, im) plus a JSON sidecar with the config and conserved log.
void write_trajectory(const std::string& csv_path, const std::string& json_path, const Trajectory& tr,
                      const FlowConfig& cfg);

}  // namespace szego
