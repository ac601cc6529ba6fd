#include "icct/trap.hpp"

#include <cmath>

namespace icct {

const char* to_string(StabilityFlag flag) {
    switch (flag) {
        case StabilityFlag::ok: return "OK";
        case StabilityFlag::warn: return "WARN";
        case StabilityFlag::unstable: return "UNSTABLE";
    }
    return "?";
}

void validate(const TrapGeometry& geom) {
    if (!(geom.z_half_m > 0.0)) throw ConfigError("trap: z_half_m must be > 0");
    if (!(geom.r0_m > 0.0)) throw ConfigError("trap: r0_m must be > 0");
    if (!(geom.omega_rf_rad_s > 0.0)) throw ConfigError("trap: rf drive frequency must be > 0");
    if (!(geom.eta > 0.0 && geom.eta < 1.0)) throw ConfigError("trap: eta must be in (0, 1)");
}

void validate(const DriveVoltages& v) {
    if (!(v.u_rf_volts >= 0.0)) throw ConfigError("drive: u_rf_volts must be >= 0");
    if (!(v.u_end_volts >= 0.0)) throw ConfigError("drive: u_end_volts must be >= 0");
}

void validate(const IonSpecies& ion) {
    if (!(ion.mass_kg > 0.0)) throw ConfigError("species " + ion.label + ": mass must be > 0");
    if (!(ion.charge_C > 0.0)) throw ConfigError("species " + ion.label + ": charge must be > 0");
    if (!(ion.transition.wavelength_m > 0.0))
        throw ConfigError("species " + ion.label + ": transition wavelength must be > 0");
    if (!(ion.transition.gamma_rad_s > 0.0))
        throw ConfigError("species " + ion.label + ": transition gamma must be > 0");
}

double axial_frequency(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion) {
    const double wz2 = 2.0 * geom.eta * ion.charge_C * v.u_end_volts /
                       (ion.mass_kg * geom.z_half_m * geom.z_half_m);
    return std::sqrt(wz2);
}

double radial_frequency_rf_term(const TrapGeometry& geom, const DriveVoltages& v,
                                const IonSpecies& ion) {
    const double r0_2 = geom.r0_m * geom.r0_m;
    return ion.charge_C * v.u_rf_volts /
           (std::sqrt(2.0) * ion.mass_kg * r0_2 * geom.omega_rf_rad_s);
}

double radial_frequency(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion) {
    const double rf = radial_frequency_rf_term(geom, v, ion);
    const double wz = axial_frequency(geom, v, ion);
    const double wr2 = rf * rf - 0.5 * wz * wz;
    if (!(wr2 > 0.0)) throw InfeasibleError("radially deconfined");
    return std::sqrt(wr2);
}

MathieuQ mathieu_q(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion) {
    const double r0_2 = geom.r0_m * geom.r0_m;
    const double q = 2.0 * ion.charge_C * v.u_rf_volts /
                     (ion.mass_kg * r0_2 * geom.omega_rf_rad_s * geom.omega_rf_rad_s);
    MathieuQ out;
    out.q = q;
    if (q >= 0.908) {
        out.flag = StabilityFlag::unstable;
    } else if (q >= 0.5) {
        out.flag = StabilityFlag::warn;
    } else {
        out.flag = StabilityFlag::ok;
    }
    return out;
}

double crystal_density(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion) {
    const double r0_4 = std::pow(geom.r0_m, 4);
    return constants::epsilon0_F_m * v.u_rf_volts * v.u_rf_volts /
           (ion.mass_kg * r0_4 * geom.omega_rf_rad_s * geom.omega_rf_rad_s);
}

double pseudo_potential(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion,
                        const Vec3& p) {
    const double wr = radial_frequency(geom, v, ion);
    const double wz = axial_frequency(geom, v, ion);
    return 0.5 * ion.mass_kg * (wr * wr * (p.x * p.x + p.y * p.y) + wz * wz * p.z * p.z);
}

}  // namespace icct
