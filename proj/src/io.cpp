#include "szego/io.hpp"

#include <fftw3.h>

#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "szego/bump.hpp"
#include "szego/parallel.hpp"

namespace szego {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::ofstream open_out(const std::string& path) {
    const fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
        if (ec) throw IOError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IOError("cannot open " + path + " for writing");
    return f;
}

void write_json(const std::string& path, const json& j) {
    // write-then-rename so a reader never sees a half-written manifest
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f = open_out(tmp);
        f << j.dump(2) << '\n';
        if (!f) throw IOError("write failed: " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IOError("cannot rename " + tmp + ": " + ec.message());
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_csv(const std::string& path, const std::vector<ObservableRecord>& rows) {
    std::ofstream f = open_out(path);
    f << "sample,N,t,quantity,value\n";
    for (const ObservableRecord& r : rows)
        f << r.sample << ',' << r.N << ',' << format_double(r.t) << ',' << csv_field(r.quantity) << ','
          << format_double(r.value) << '\n';
    if (!f) throw IOError("write failed: " + path);
}

std::vector<ObservableRecord> read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IOError("cannot open " + path);
    std::string line;
    if (!std::getline(f, line) || line != "sample,N,t,quantity,value") throw IOError(path + ": unexpected header");
    std::vector<ObservableRecord> out;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> c = split_csv_line(line);
        if (c.size() != 5) throw IOError(path + ":" + std::to_string(lineno) + ": expected 5 fields");
        try {
            out.push_back({std::stol(c[0]), std::stol(c[1]), std::stod(c[2]), c[3], std::stod(c[4])});
        } catch (const std::exception&) {
            throw IOError(path + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
    return out;
}

std::string phi_hash() {
    std::uint64_t h = 1469598103934665603ULL;
    auto eat = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ULL;
        }
    };
    const std::string def = "phi(x)=theta((8/5-|x|)/(8/5-5/4)); theta(t)=S(t)/(S(t)+S(1-t)); S(t)=exp(-1/t), t>0";
    eat(def.data(), def.size());
    for (int i = 0; i <= 4096; ++i) {
        const double v = bump(2.0 * i / 4096.0);
        eat(&v, sizeof v);
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json environment_fingerprint() {
    json e;
#if defined(__clang__)
    e["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    e["compiler"] = std::string("gcc ") + __VERSION__;
#endif
    e["cxx_standard"] = static_cast<long>(__cplusplus);
    e["fftw"] = std::string(fftw_version);
    e["boost"] = BOOST_LIB_VERSION;
    e["hardware_concurrency"] = std::thread::hardware_concurrency();
    e["threads"] = default_threads();
    char host[256] = {0};
    if (gethostname(host, sizeof host - 1) == 0) e["host"] = host;
    e["timestamp_utc"] = utc_now();
    return e;
}

json options_to_json(const ExperimentOptions& o) {
    json j;
    j["seed"] = o.ensemble.seed;
    j["sample_count"] = o.ensemble.sample_count;
    j["s"] = o.s_values;
    j["cutoffs"] = o.ensemble.cutoffs;
    j["times"] = o.ensemble.times;
    j["galerkin_factor"] = o.ensemble.galerkin_factor;
    j["t"] = number_or_null(o.t);
    j["p"] = o.p;
    j["sigma"] = o.sigma;
    j["radius_factor"] = o.radius_factor;
    j["rtol"] = o.rtol;
    j["atol"] = o.atol;
    j["rerun_on_failure"] = o.rerun_on_failure;
    return j;
}

json report_to_json(const ExperimentReport& r) {
    json j;
    json params = json::object();
    for (const Parameter& p : r.parameters) {
        if (p.is_text)
            params[p.key] = p.text;
        else if (p.values.size() == 1)
            params[p.key] = number_or_null(p.values[0]);
        else {
            json a = json::array();
            for (double v : p.values) a.push_back(number_or_null(v));
            params[p.key] = a;
        }
    }
    j["parameters"] = params;
    json fits = json::array();
    for (const FitRecord& f : r.fits)
        fits.push_back({{"quantity", f.quantity},
                        {"s", f.s},
                        {"exponent", number_or_null(f.value)},
                        {"ci_lo", number_or_null(f.ci_lo)},
                        {"ci_hi", number_or_null(f.ci_hi)},
                        {"bootstrap_se", number_or_null(f.se)}});
    j["fits"] = fits;
    json checks = json::array();
    for (const CheckRecord& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"measured", number_or_null(c.measured)},
                          {"relation", c.relation},
                          {"threshold", c.threshold},
                          {"passed", c.passed},
                          {"statistical", c.statistical}});
    j["checks"] = checks;
    j["notes"] = r.notes;
    j["degenerate"] = r.degenerate;
    j["rerun_with_4x_samples"] = r.rerun;
    j["passed"] = r.passed();
    j["seconds"] = r.seconds;
    j["row_count"] = r.rows.size();
    return j;
}

namespace {

json manifest_base(const std::string& name, const ExperimentOptions& o) {
    json m;
    m["schema_version"] = kManifestSchemaVersion;
    m["csv_schema"] = kCsvSchema;
    m["experiment"] = name;
    m["csv"] = name + ".csv";
    m["spec"] = options_to_json(o);
    m["phi_hash"] = phi_hash();
    m["environment"] = environment_fingerprint();
    return m;
}

}  // namespace

void write_manifest_pending(const std::string& dir, const std::string& name, const ExperimentOptions& o) {
    json m = manifest_base(name, o);
    m["status"] = "running";
    write_json((fs::path(dir) / (name + ".manifest.json")).string(), m);
}

void write_results(const std::string& dir, const ExperimentReport& r, const ExperimentOptions& o) {
    write_csv((fs::path(dir) / (r.name + ".csv")).string(), r.rows);
    json m = manifest_base(r.name, o);
    m["status"] = r.degenerate ? "degenerate" : (r.passed() ? "passed" : "failed");
    m["report"] = report_to_json(r);
    write_json((fs::path(dir) / (r.name + ".manifest.json")).string(), m);
}

void write_trajectory(const std::string& csv_path, const std::string& json_path, const Trajectory& tr,
                      const FlowConfig& cfg) {
    {
        std::ofstream f = open_out(csv_path);
        f << "t,n,re,im\n";
        for (std::size_t k = 0; k < tr.times.size(); ++k)
            for (std::size_t n = 0; n < tr.states[k].size(); ++n)
                f << format_double(tr.times[k]) << ',' << n << ',' << format_double(tr.states[k][n].real()) << ','
                  << format_double(tr.states[k][n].imag()) << '\n';
        if (!f) throw IOError("write failed: " + csv_path);
    }
    json j;
    j["schema_version"] = kManifestSchemaVersion;
    j["config"] = {{"cutoff", cfg.cutoff},
                   {"integrator", cfg.integrator == Integrator::rk4_fixed ? "rk4_fixed" : "dp54_adaptive"},
                   {"dt", cfg.dt},
                   {"rtol", cfg.rtol},
                   {"atol", cfg.atol},
                   {"padding_factor", cfg.padding_factor}};
    json log = json::array();
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        log.push_back({{"t", tr.times[k]},
                       {"mass", tr.conserved_log[k].mass},
                       {"momentum", tr.conserved_log[k].momentum},
                       {"hamiltonian", tr.conserved_log[k].hamiltonian}});
    j["conserved_log"] = log;
    j["steps"] = {{"accepted", tr.stats.accepted}, {"rejected", tr.stats.rejected}, {"rhs_evaluations", tr.stats.rhs_evals}};
    j["phi_hash"] = phi_hash();
    write_json(json_path, j);
}

}  // namespace szego
