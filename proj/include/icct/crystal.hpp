// Zero-temperature charged-liquid model of an ion Coulomb crystal: uniform
// density spheroid whose aspect ratio is fixed by the trap frequency ratio,
// plus the radial two-species structure.
#pragma once

#include "icct/trap.hpp"

namespace icct {

struct CrystalSpec {
    double ion_count = 0.0;
    double density_m3 = 0.0;
    double half_length_m = 0.0;  // axial semi-axis a
    double radius_m = 0.0;       // radial semi-axis R
    IonSpecies species;
    bool point_like = false;  // N = 1 degenerate case (a = R = 0)
};

// Two isotopes separate radially; the smaller mass-to-charge species forms a
// core column. Each component is also reported as the equivalent spheroid it
// would form alone in the same trap.
struct TwoComponentCrystal {
    CrystalSpec inner;
    CrystalSpec outer;
    double boundary_radius_m = 0.0;  // core column radius from charge balance
    double total_length_m = 0.0;     // combined-crystal length (outer-species closure)
    double outer_radius_m = 0.0;     // combined-crystal radial extent
    bool long_crystal_ok = false;    // cylinder model assumes length >> radius
};

// Interior-field shape factor A_z of a uniform spheroid with aspect ratio
// alpha = a/R (A_z + 2 A_r = 2; sphere gives 2/3). The frequency ratio
// closure is omega_z^2 / omega_r^2 = A_z / A_r.
double spheroid_axial_factor(double alpha);

// Solves the closure for alpha given omega_z^2/omega_r^2. Bisection on
// [1e-3, 1e3] to 1e-9 relative; outside that bracket throws
// InfeasibleError("extreme anisotropy").
double aspect_from_frequency_ratio(double wz2_over_wr2);

CrystalSpec spheroid_from_count(const TrapGeometry& geom, const DriveVoltages& v,
                                const IonSpecies& ion, double ion_count);

double count_from_length(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion,
                         double total_length_m);

// Order of the two species arguments does not matter; the lighter
// mass-to-charge ratio is assigned to the core. Equal ratios throw
// InfeasibleError("no separation").
TwoComponentCrystal two_component_structure(const TrapGeometry& geom, const DriveVoltages& v,
                                            const IonSpecies& a, const IonSpecies& b,
                                            double count_a, double count_b);

}  // namespace icct
