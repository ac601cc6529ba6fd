// Least-squares linear fits for measured series (loading rate, PZT
// calibration) with standard errors on both parameters.
#pragma once

#include <span>
#include <string>
#include <vector>

namespace icct {

struct TimeSeries {
    std::vector<double> t;      // abscissae (s for loading curves, V for PZT scans)
    std::vector<double> value;
    std::vector<double> sigma;  // optional per-point uncertainty; empty if absent
    bool has_sigma() const { return !sigma.empty(); }
};

// Parses CSV with header "t_s,value" or "t_s,value,sigma" (any abscissa name
// is accepted in the first column). Requires strictly increasing abscissae
// and finite values.
TimeSeries parse_time_series_csv(const std::string& text);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_err = 0.0;
    double intercept_err = 0.0;
    std::size_t n_points = 0;
};

// Ordinary least squares; needs >= 3 points and a non-degenerate abscissa.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

// Inverse-variance weighted fit used when an uncertainty column is present.
LinearFit fit_linear_weighted(std::span<const double> x, std::span<const double> y,
                              std::span<const double> sigma);

}  // namespace icct
