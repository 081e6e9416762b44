#include "szego/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace szego {

double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean: empty input");
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("variance: need two values");
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

double standard_error(const std::vector<double>& v) { return std::sqrt(variance(v) / static_cast<double>(v.size())); }

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile: empty input");
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    if (i + 1 >= v.size()) return v.back();
    return v[i] + frac * (v[i + 1] - v[i]);
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares: need >= 2 points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

namespace {

std::vector<double> logs(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(v[i]);
    return out;
}

void finish(PowerLawFit& f, std::vector<double>& boot, double level) {
    if (boot.size() < 2) return;
    f.ci_lo = quantile(boot, 0.5 * (1.0 - level));
    f.ci_hi = quantile(boot, 0.5 * (1.0 + level));
    double m = 0.0;
    for (double b : boot) m += b;
    m /= static_cast<double>(boot.size());
    double v = 0.0;
    for (double b : boot) v += (b - m) * (b - m);
    f.bootstrap_se = std::sqrt(v / static_cast<double>(boot.size() - 1));
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, std::size_t B,
                          std::uint64_t seed, double level) {
    const auto lx = logs(x), ly = logs(y);
    const LinearFit base = least_squares(lx, ly);
    PowerLawFit f{base.slope, base.intercept, base.slope, base.slope, 0.0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    std::vector<double> boot;
    std::vector<double> bx(x.size()), by(x.size());
    for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const std::size_t j = pick(rng);
            bx[i] = lx[j];
            by[i] = ly[j];
        }
        if (*std::max_element(bx.begin(), bx.end()) == *std::min_element(bx.begin(), bx.end())) continue;
        boot.push_back(least_squares(bx, by).slope);
    }
    finish(f, boot, level);
    return f;
}

PowerLawFit fit_power_law_ensemble(const std::vector<double>& x, const std::vector<std::vector<double>>& values,
                                   const std::function<double(const std::vector<double>&)>& stat, std::size_t B,
                                   std::uint64_t seed, double level) {
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("fit_power_law_ensemble: no samples");
    auto fit_rows = [&](const std::vector<std::size_t>& rows) {
        std::vector<double> y(x.size());
        std::vector<double> col(rows.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
            for (std::size_t i = 0; i < rows.size(); ++i) col[i] = values[rows[i]][k];
            y[k] = stat(col);
        }
        return least_squares(logs(x), logs(y));
    };
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    const LinearFit base = fit_rows(rows);
    PowerLawFit f{base.slope, base.intercept, base.slope, base.slope, 0.0};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> boot;
    for (std::size_t b = 0; b < B; ++b) {
        for (auto& r : rows) r = pick(rng);
        const double sl = fit_rows(rows).slope;
        if (std::isfinite(sl)) boot.push_back(sl);
    }
    finish(f, boot, level);
    return f;
}

double bootstrap_se(const std::vector<double>& v, const std::function<double(const std::vector<double>&)>& stat,
                    std::size_t B, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    std::vector<double> rs(v.size()), boot;
    for (std::size_t b = 0; b < B; ++b) {
        for (auto& r : rs) r = v[pick(rng)];
        boot.push_back(stat(rs));
    }
    return std::sqrt(variance(boot));
}

}  // namespace szego
