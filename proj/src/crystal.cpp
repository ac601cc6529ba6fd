#include "icct/crystal.hpp"

#include <cmath>
#include <utility>

namespace icct {

namespace {

constexpr double kAlphaMin = 1e-3;
constexpr double kAlphaMax = 1e3;

double frequency_ratio_of_aspect(double alpha) {
    const double az = spheroid_axial_factor(alpha);
    const double ar = 1.0 - 0.5 * az;
    return az / ar;
}

}  // namespace

double spheroid_axial_factor(double alpha) {
    // Closed forms on each anisotropy branch; series around the sphere where
    // both become ill-conditioned.
    if (std::abs(alpha - 1.0) < 1e-5) {
        return 2.0 / 3.0 - (8.0 / 15.0) * (alpha - 1.0);
    }
    if (alpha > 1.0) {
        // prolate: e = sqrt(1 - 1/alpha^2)
        const double e2 = 1.0 - 1.0 / (alpha * alpha);
        const double e = std::sqrt(e2);
        return 2.0 * (1.0 - e2) / (e2 * e) * (std::atanh(e) - e);
    }
    // oblate: c = sqrt(1 - alpha^2)
    const double c2 = 1.0 - alpha * alpha;
    const double c = std::sqrt(c2);
    return 2.0 / c2 * (1.0 - alpha / c * std::atan(c / alpha));
}

double aspect_from_frequency_ratio(double wz2_over_wr2) {
    const double target = wz2_over_wr2;
    if (!(target > 0.0) || !std::isfinite(target)) throw InfeasibleError("extreme anisotropy");
    // ratio(alpha) decreases monotonically from the oblate to the prolate end.
    double lo = kAlphaMin;
    double hi = kAlphaMax;
    if (target > frequency_ratio_of_aspect(lo) || target < frequency_ratio_of_aspect(hi)) {
        throw InfeasibleError("extreme anisotropy");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (frequency_ratio_of_aspect(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if ((hi - lo) < 1e-9 * hi) break;
    }
    return 0.5 * (lo + hi);
}

CrystalSpec spheroid_from_count(const TrapGeometry& geom, const DriveVoltages& v,
                                const IonSpecies& ion, double ion_count) {
    if (!(ion_count >= 1.0)) throw InfeasibleError("ion count must be >= 1");

    CrystalSpec spec;
    spec.species = ion;
    spec.ion_count = ion_count;
    spec.density_m3 = crystal_density(geom, v, ion);

    if (ion_count == 1.0) {
        spec.point_like = true;
        return spec;
    }

    const double wz = axial_frequency(geom, v, ion);
    const double wr = radial_frequency(geom, v, ion);
    const double alpha = aspect_from_frequency_ratio((wz * wz) / (wr * wr));

    const double volume = ion_count / spec.density_m3;
    spec.radius_m = std::cbrt(3.0 * volume / (4.0 * constants::pi * alpha));
    spec.half_length_m = alpha * spec.radius_m;
    return spec;
}

double count_from_length(const TrapGeometry& geom, const DriveVoltages& v, const IonSpecies& ion,
                         double total_length_m) {
    if (!(total_length_m > 0.0)) throw InfeasibleError("crystal length must be > 0");

    const double wz = axial_frequency(geom, v, ion);
    const double wr = radial_frequency(geom, v, ion);
    const double alpha = aspect_from_frequency_ratio((wz * wz) / (wr * wr));

    const double a = 0.5 * total_length_m;
    const double radius = a / alpha;
    const double volume = 4.0 / 3.0 * constants::pi * radius * radius * a;
    return crystal_density(geom, v, ion) * volume;
}

TwoComponentCrystal two_component_structure(const TrapGeometry& geom, const DriveVoltages& v,
                                            const IonSpecies& a, const IonSpecies& b,
                                            double count_a, double count_b) {
    const double moq_a = a.mass_kg / a.charge_C;
    const double moq_b = b.mass_kg / b.charge_C;
    if (moq_a == moq_b) throw InfeasibleError("no separation");

    const IonSpecies& inner_ion = (moq_a < moq_b) ? a : b;
    const IonSpecies& outer_ion = (moq_a < moq_b) ? b : a;
    const double n_inner = (moq_a < moq_b) ? count_a : count_b;
    const double n_outer = (moq_a < moq_b) ? count_b : count_a;

    TwoComponentCrystal out;
    out.inner = spheroid_from_count(geom, v, inner_ion, n_inner);
    out.outer = spheroid_from_count(geom, v, outer_ion, n_outer);

    // Combined crystal: total occupied volume at each species' density, outer
    // boundary shaped by the outer (confining) species' frequency ratio.
    const double rho_in = out.inner.density_m3;
    const double rho_out = out.outer.density_m3;
    const double volume = n_inner / rho_in + n_outer / rho_out;
    const double wz = axial_frequency(geom, v, outer_ion);
    const double wr = radial_frequency(geom, v, outer_ion);
    const double alpha = aspect_from_frequency_ratio((wz * wz) / (wr * wr));
    out.outer_radius_m = std::cbrt(3.0 * volume / (4.0 * constants::pi * alpha));
    out.total_length_m = 2.0 * alpha * out.outer_radius_m;

    // Core column radius from charge balance of the inner species at its own
    // density over the full crystal length (long-crystal limit).
    out.boundary_radius_m =
        std::sqrt(n_inner / (constants::pi * rho_in * out.total_length_m));
    out.long_crystal_ok = out.total_length_m >= 4.0 * out.outer_radius_m;
    return out;
}

}  // namespace icct
