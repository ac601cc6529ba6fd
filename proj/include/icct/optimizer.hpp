// Voltage sweep maximizing the number of ions in the cavity mode under a
// crystal-length stability constraint.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "icct/cavity.hpp"
#include "icct/crystal.hpp"
#include "icct/trap.hpp"

namespace icct {

// Maximum stable crystal length versus rf voltage. The instability is
// empirical (rf heating); the table is a declared model input, not a
// prediction. Linear interpolation between knots; undefined outside them.
class StabilityConstraint {
  public:
    static StabilityConstraint unconstrained();
    static StabilityConstraint default_table();
    // CSV with header "u_rf_V,max_length_m".
    static StabilityConstraint from_csv(const std::string& text);

    bool is_constrained() const { return !knots_.empty(); }
    bool defined_at(double u_rf_volts) const;
    // +infinity when unconstrained.
    double max_length_m(double u_rf_volts) const;

  private:
    std::vector<std::pair<double, double>> knots_;  // (u_rf, max length), ascending
};

struct SweepPoint {
    double u_rf_volts = 0.0;
    double u_end_volts = 0.0;
    double density_m3 = 0.0;
    double length_m = 0.0;  // after the stability cap
    double n_in_mode = 0.0;
    double g_collective_rad_s = 0.0;
    bool feasible = false;
    std::string reason;  // why infeasible, empty otherwise
};

struct SweepGrid {
    std::vector<double> u_rf_volts;
    std::vector<double> u_end_volts;
};

struct SweepResult {
    SweepGrid grid;
    std::vector<SweepPoint> points;  // row-major, u_rf outer
    std::size_t argmax = 0;          // index into points
    long strong_coupling_n_min = 0;
    // u_rf values where the per-voltage best N crosses the threshold
    std::vector<double> threshold_crossings_v;
};

SweepPoint evaluate_point(double u_rf_volts, double u_end_volts, const TrapGeometry& geom,
                          const IonSpecies& ion, const ModeGeometry& mode, double n_total,
                          const StabilityConstraint& constraint);

// Evaluates the grid and locates the feasible maximum of n_in_mode. Throws
// InfeasibleError if every point is infeasible.
SweepResult sweep(const SweepGrid& grid, const TrapGeometry& geom, const IonSpecies& ion,
                  const ModeGeometry& mode, double kappa_rad_s, double n_total,
                  const StabilityConstraint& constraint);

// CSV columns: u_rf_V,u_end_V,density_m3,length_m,n_in_mode,g_coll_rad_s,feasible
void write_sweep_csv(std::ostream& os, const SweepResult& result);
SweepResult read_sweep_csv(std::istream& is);  // grid/points only (round-trip check)

// JSON summary with the argmax record, the strong-coupling threshold and its
// crossing voltages.
std::string sweep_summary_json(const SweepResult& result);

}  // namespace icct
