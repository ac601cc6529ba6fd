// Physical constants (CODATA 2018). Single authoritative definition for the
// whole toolkit; every module pulls from here.
#pragma once

namespace icct::constants {

inline constexpr double epsilon0_F_m = 8.8541878128e-12;   // vacuum permittivity
inline constexpr double hbar_J_s = 1.054571817e-34;        // reduced Planck constant
inline constexpr double c_m_s = 299792458.0;               // speed of light (exact)
inline constexpr double atomic_mass_kg = 1.66053906660e-27;
inline constexpr double elementary_charge_C = 1.602176634e-19;  // exact
inline constexpr double boltzmann_J_K = 1.380649e-23;           // exact
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Coulomb constant 1/(4 pi eps0)
inline constexpr double coulomb_N_m2_C2 = 1.0 / (4.0 * pi * epsilon0_F_m);

}  // namespace icct::constants
