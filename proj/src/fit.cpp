#include "icct/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "icct/errors.hpp"

namespace icct {

TimeSeries parse_time_series_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("series: empty input");

    // header: two or three comma-separated column names
    std::size_t n_cols = 1 + static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    if (n_cols != 2 && n_cols != 3)
        throw ConfigError("series: header must have 2 or 3 columns, got '" + line + "'");

    TimeSeries series;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string field;
        std::vector<double> vals;
        while (std::getline(row, field, ',')) {
            try {
                vals.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw ConfigError("series: line " + std::to_string(line_no) +
                                  ": bad number '" + field + "'");
            }
        }
        if (vals.size() != n_cols)
            throw ConfigError("series: line " + std::to_string(line_no) +
                              ": expected " + std::to_string(n_cols) + " columns");
        for (double v : vals)
            if (!std::isfinite(v))
                throw ConfigError("series: line " + std::to_string(line_no) +
                                  ": non-finite value");
        if (!series.t.empty() && vals[0] <= series.t.back())
            throw ConfigError("series: line " + std::to_string(line_no) +
                              ": abscissa must be strictly increasing");
        series.t.push_back(vals[0]);
        series.value.push_back(vals[1]);
        if (n_cols == 3) series.sigma.push_back(vals[2]);
    }
    return series;
}

namespace {

LinearFit fit_core(std::span<const double> x, std::span<const double> y,
                   std::span<const double> w) {
    const std::size_t n = x.size();
    if (n < 3) throw InfeasibleError("fit: need at least 3 points");
    if (y.size() != n || (!w.empty() && w.size() != n))
        throw ConfigError("fit: mismatched array lengths");

    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        sw += wi;
        swx += wi * x[i];
        swy += wi * y[i];
    }
    const double xbar = swx / sw;
    const double ybar = swy / sw;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        const double dx = x[i] - xbar;
        sxx += wi * dx * dx;
        sxy += wi * dx * (y[i] - ybar);
    }
    if (!(sxx > 0.0)) throw InfeasibleError("fit: degenerate abscissa");

    LinearFit fit;
    fit.n_points = n;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;

    if (w.empty()) {
        // scale errors by the residual variance (n - 2 dof)
        double ssr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ssr += r * r;
        }
        const double s2 = ssr / static_cast<double>(n - 2);
        fit.slope_err = std::sqrt(s2 / sxx);
        fit.intercept_err = std::sqrt(s2 * (1.0 / sw + xbar * xbar / sxx));
    } else {
        // errors from the stated uncertainties
        fit.slope_err = std::sqrt(1.0 / sxx);
        fit.intercept_err = std::sqrt(1.0 / sw + xbar * xbar / sxx);
    }
    return fit;
}

}  // namespace

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
    return fit_core(x, y, {});
}

LinearFit fit_linear_weighted(std::span<const double> x, std::span<const double> y,
                              std::span<const double> sigma) {
    std::vector<double> w(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (!(sigma[i] > 0.0)) throw ConfigError("fit: uncertainties must be > 0");
        w[i] = 1.0 / (sigma[i] * sigma[i]);
    }
    return fit_core(x, y, w);
}

}  // namespace icct
