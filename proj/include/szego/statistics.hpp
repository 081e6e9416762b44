#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace szego {

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased
double standard_error(const std::vector<double>& v);
double median(std::vector<double> v);
double quantile(std::vector<double> v, double q);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct PowerLawFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double bootstrap_se = 0.0;
};

// y ~ C x^e by least squares in log-log; CI from resampling the points.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, std::size_t B = 1000,
                          std::uint64_t seed = 1, double level = 0.95);

// Ensemble version: values[i][k] is sample i at abscissa x[k]; `stat` maps the column of one abscissa
// (possibly resampled) to the quantity being fitted, e.g. a mean or a variance. Samples are resampled as
// whole rows so correlations across x are kept.
PowerLawFit fit_power_law_ensemble(const std::vector<double>& x, const std::vector<std::vector<double>>& values,
                                   const std::function<double(const std::vector<double>&)>& stat,
                                   std::size_t B = 1000, std::uint64_t seed = 1, double level = 0.95);

// Bootstrap standard error of a statistic of one sample vector.
double bootstrap_se(const std::vector<double>& v, const std::function<double(const std::vector<double>&)>& stat,
                    std::size_t B = 1000, std::uint64_t seed = 1);

}  // namespace szego
