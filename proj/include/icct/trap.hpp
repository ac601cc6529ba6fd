// Linear Paul trap model: secular frequencies, Mathieu stability, crystal
// density and pseudopotential energies from electrode voltages.
#pragma once

#include <string>

#include "icct/constants.hpp"
#include "icct/errors.hpp"

namespace icct {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Optical transition of the trapped ion used for cavity coupling.
struct TransitionData {
    double dipole_moment_C_m = 0.0;
    double wavelength_m = 0.0;
    double gamma_rad_s = 0.0;       // atomic dipole decay rate (half the population decay)
    double isotope_shift_hz = 0.0;  // shift of this transition relative to the reference isotope
};

struct IonSpecies {
    std::string label;
    double mass_kg = 0.0;
    double charge_C = constants::elementary_charge_C;
    TransitionData transition;
};

// Electrode geometry and rf drive. z_half_m is the half-length of the center
// electrode section: the axial potential formula takes the half-length, and
// only that reading reproduces the measured secular frequencies.
struct TrapGeometry {
    double z_half_m = 2.5e-3;
    double r0_m = 2.35e-3;
    double eta = 0.342;
    double omega_rf_rad_s = constants::two_pi * 4.0e6;
};

struct DriveVoltages {
    double u_rf_volts = 130.0;
    double u_end_volts = 3.9;
};

enum class StabilityFlag { ok, warn, unstable };

struct MathieuQ {
    double q = 0.0;
    StabilityFlag flag = StabilityFlag::ok;
};

const char* to_string(StabilityFlag flag);

void validate(const TrapGeometry& geom);
void validate(const DriveVoltages& v);
void validate(const IonSpecies& ion);

// omega_z = sqrt(2 eta Q U_end / (M z_half^2)); zero end voltage gives 0.
double axial_frequency(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion);

// rf confinement term of the radial pseudopotential, Q U_rf / (sqrt(2) M r0^2 Omega_rf).
double radial_frequency_rf_term(const TrapGeometry& geom, const DriveVoltages& v,
                                const IonSpecies& ion);

// Full radial secular frequency including end-cap defocusing. Throws
// InfeasibleError("radially deconfined") when the end voltage wins.
double radial_frequency(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion);

// q = 2 Q U_rf / (M r0^2 Omega_rf^2) with a validity flag (warn at 0.5,
// unstable at the single-ion Mathieu edge 0.908).
MathieuQ mathieu_q(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion);

// Cold-crystal number density, eps0 U_rf^2 / (M r0^4 Omega_rf^2). Independent
// of the end voltage.
double crystal_density(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion);

// Pseudopotential energy 0.5 M (omega_r^2 (x^2+y^2) + omega_z^2 z^2) at a point.
double pseudo_potential(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion,
                        const Vec3& position);

}  // namespace icct
