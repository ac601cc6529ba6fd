// Independent oracles used by the tests. These deliberately take different
// routes than the library: direct quadrature instead of closed forms, and
// textbook equilibrium formulas instead of the simulation path.
#pragma once

#include <cmath>

#include "icct/constants.hpp"
#include "icct/trap.hpp"

namespace oracles {

// Interior shape factor of a uniform spheroid, A_z(alpha) with sum A_i = 2,
// via the substituted integral A_z = alpha * int_0^1 sqrt(u) (1 - u + alpha^2 u)^(-3/2) du
// evaluated with composite Simpson. Independent of the closed forms.
inline double spheroid_axial_factor_quadrature(double alpha) {
    const std::size_t n = 200000;  // even
    const double h = 1.0 / static_cast<double>(n);
    auto f = [alpha](double u) {
        const double denom = 1.0 - u + alpha * alpha * u;
        return std::sqrt(u) / (denom * std::sqrt(denom));
    };
    double sum = f(0.0) + f(1.0);
    for (std::size_t i = 1; i < n; ++i) {
        sum += f(h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return alpha * sum * h / 3.0;
}

// Equilibrium spacing of two identical ions in a harmonic axial well:
// Coulomb repulsion balances the restoring force at d = (Q^2 / (2 pi eps0 M wz^2))^(1/3).
inline double two_ion_axial_spacing(const icct::IonSpecies& ion, double omega_z_rad_s) {
    const double num = ion.charge_C * ion.charge_C;
    const double den = 2.0 * icct::constants::pi * icct::constants::epsilon0_F_m *
                       ion.mass_kg * omega_z_rad_s * omega_z_rad_s;
    return std::cbrt(num / den);
}

}  // namespace oracles
