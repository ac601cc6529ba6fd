#include "icct/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace icct {

StabilityConstraint StabilityConstraint::unconstrained() { return {}; }

StabilityConstraint StabilityConstraint::default_table() {
    // Calibrated so that the mode population peaks near 350 V with ~2000 ions
    // for the reference cavity; see the sweep documentation.
    StabilityConstraint c;
    c.knots_ = {
        {100.0, 5.0e-3}, {150.0, 4.2e-3}, {200.0, 3.5e-3}, {250.0, 3.0e-3},
        {300.0, 2.6e-3}, {350.0, 2.25e-3}, {400.0, 1.55e-3},
    };
    return c;
}

StabilityConstraint StabilityConstraint::from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "u_rf_V,max_length_m")
        throw ConfigError("constraint: expected header 'u_rf_V,max_length_m'");
    StabilityConstraint c;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        double u = 0.0, len = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &u, &len) != 2)
            throw ConfigError("constraint: line " + std::to_string(line_no) + ": bad row");
        if (!(len > 0.0))
            throw ConfigError("constraint: line " + std::to_string(line_no) +
                              ": max length must be > 0");
        if (!c.knots_.empty()) {
            if (u <= c.knots_.back().first)
                throw ConfigError("constraint: u_rf values must be strictly increasing");
            if (len > c.knots_.back().second)
                throw ConfigError("constraint: max length must be non-increasing in u_rf");
        }
        c.knots_.emplace_back(u, len);
    }
    if (c.knots_.empty()) throw ConfigError("constraint: no rows");
    return c;
}

bool StabilityConstraint::defined_at(double u) const {
    if (knots_.empty()) return true;
    return u >= knots_.front().first && u <= knots_.back().first;
}

double StabilityConstraint::max_length_m(double u) const {
    if (knots_.empty()) return std::numeric_limits<double>::infinity();
    if (!defined_at(u)) throw InfeasibleError("constraint not defined at this rf voltage");
    auto it = std::lower_bound(knots_.begin(), knots_.end(), u,
                               [](const auto& k, double v) { return k.first < v; });
    if (it == knots_.begin()) return it->second;
    if (it == knots_.end() || it->first > u) {
        const auto& hi = (it == knots_.end()) ? knots_.back() : *it;
        const auto& lo = *(it - 1);
        const double f = (u - lo.first) / (hi.first - lo.first);
        return lo.second + f * (hi.second - lo.second);
    }
    return it->second;
}

SweepPoint evaluate_point(double u_rf_volts, double u_end_volts, const TrapGeometry& geom,
                          const IonSpecies& ion, const ModeGeometry& mode, double n_total,
                          const StabilityConstraint& constraint) {
    SweepPoint point;
    point.u_rf_volts = u_rf_volts;
    point.u_end_volts = u_end_volts;

    const DriveVoltages v{u_rf_volts, u_end_volts};
    point.density_m3 = crystal_density(geom, v, ion);

    if (mathieu_q(geom, v, ion).flag == StabilityFlag::unstable) {
        point.reason = "mathieu unstable";
        return point;
    }
    if (!constraint.defined_at(u_rf_volts)) {
        point.reason = "constraint undefined";
        return point;
    }

    CrystalSpec crystal;
    try {
        crystal = spheroid_from_count(geom, v, ion, n_total);
    } catch (const InfeasibleError& e) {
        point.reason = e.what();
        return point;
    }

    point.length_m = std::min(2.0 * crystal.half_length_m,
                              constraint.max_length_m(u_rf_volts));
    // capped crystal keeps the rf-voltage density; only the length changes
    CrystalSpec capped = crystal;
    capped.half_length_m = 0.5 * point.length_m;
    const IonsInMode in_mode = ions_in_mode(capped, mode);
    point.n_in_mode = in_mode.n_closed_form;
    point.g_collective_rad_s = in_mode.collective_coupling_rad_s;
    point.feasible = true;
    return point;
}

SweepResult sweep(const SweepGrid& grid, const TrapGeometry& geom, const IonSpecies& ion,
                  const ModeGeometry& mode, double kappa_rad_s, double n_total,
                  const StabilityConstraint& constraint) {
    if (grid.u_rf_volts.empty() || grid.u_end_volts.empty())
        throw ConfigError("sweep: empty grid");

    SweepResult result;
    result.grid = grid;
    result.points.reserve(grid.u_rf_volts.size() * grid.u_end_volts.size());

    bool any_feasible = false;
    double best = -1.0;
    for (double u_rf : grid.u_rf_volts) {
        for (double u_end : grid.u_end_volts) {
            SweepPoint p =
                evaluate_point(u_rf, u_end, geom, ion, mode, n_total, constraint);
            if (p.feasible && p.n_in_mode > best) {
                best = p.n_in_mode;
                result.argmax = result.points.size();
            }
            any_feasible = any_feasible || p.feasible;
            result.points.push_back(std::move(p));
        }
    }
    if (!any_feasible) throw InfeasibleError("sweep: no feasible grid point");

    result.strong_coupling_n_min = strong_coupling_threshold(ion, mode, kappa_rad_s);

    // threshold crossings of the per-voltage best N, linearly interpolated
    const std::size_t n_end = grid.u_end_volts.size();
    std::vector<double> best_n(grid.u_rf_volts.size(), -1.0);
    for (std::size_t i = 0; i < grid.u_rf_volts.size(); ++i) {
        for (std::size_t j = 0; j < n_end; ++j) {
            const SweepPoint& p = result.points[i * n_end + j];
            if (p.feasible) best_n[i] = std::max(best_n[i], p.n_in_mode);
        }
    }
    const auto threshold = static_cast<double>(result.strong_coupling_n_min);
    for (std::size_t i = 1; i < best_n.size(); ++i) {
        if (best_n[i - 1] < 0.0 || best_n[i] < 0.0) continue;
        const bool was_below = best_n[i - 1] < threshold;
        const bool is_below = best_n[i] < threshold;
        if (was_below == is_below) continue;  // no crossing on this segment
        const double f = (threshold - best_n[i - 1]) / (best_n[i] - best_n[i - 1]);
        result.threshold_crossings_v.push_back(
            grid.u_rf_volts[i - 1] + f * (grid.u_rf_volts[i] - grid.u_rf_volts[i - 1]));
    }
    return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "u_rf_V,u_end_V,density_m3,length_m,n_in_mode,g_coll_rad_s,feasible\n";
    char buf[256];
    for (const SweepPoint& p : result.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                      p.u_rf_volts, p.u_end_volts, p.density_m3, p.length_m, p.n_in_mode,
                      p.g_collective_rad_s, p.feasible ? 1 : 0);
        os << buf;
    }
}

std::string sweep_summary_json(const SweepResult& result) {
    nlohmann::json summary;
    const SweepPoint& best = result.points[result.argmax];
    summary["argmax"] = {
        {"u_rf_volts", best.u_rf_volts},   {"u_end_volts", best.u_end_volts},
        {"density_m3", best.density_m3},   {"length_m", best.length_m},
        {"n_in_mode", best.n_in_mode},     {"g_coll_rad_s", best.g_collective_rad_s},
    };
    summary["strong_coupling_n_min"] = result.strong_coupling_n_min;
    summary["threshold_crossings_v"] = result.threshold_crossings_v;
    summary["grid_points"] = result.points.size();
    return summary.dump(2);
}

SweepResult read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) ||
        line != "u_rf_V,u_end_V,density_m3,length_m,n_in_mode,g_coll_rad_s,feasible")
        throw ConfigError("sweep csv: bad header");
    SweepResult result;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        SweepPoint p;
        int feasible = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%d", &p.u_rf_volts,
                        &p.u_end_volts, &p.density_m3, &p.length_m, &p.n_in_mode,
                        &p.g_collective_rad_s, &feasible) != 7)
            throw ConfigError("sweep csv: bad row '" + line + "'");
        p.feasible = feasible != 0;
        result.points.push_back(p);
    }
    return result;
}

}  // namespace icct
