#include "icct/species.hpp"

#include "icct/constants.hpp"
#include "icct/errors.hpp"

namespace icct {

namespace {

struct IsotopeDatum {
    int mass_number;
    double mass_u;
    double shift_866_hz;  // isotope shift of the 866 nm transition vs 40Ca+
};

// Atomic masses from the AME tables; shifts from the isotope-selective
// loading literature.
constexpr IsotopeDatum kCalcium[] = {
    {40, 39.9625909, 0.0},
    {42, 41.9586178, 2.35e9},
    {44, 43.9554816, 4.5e9},
    {48, 47.9525228, 8.3e9},
};

}  // namespace

IonSpecies calcium_ion(int mass_number) {
    for (const auto& d : kCalcium) {
        if (d.mass_number == mass_number) {
            IonSpecies ion;
            ion.label = "Ca" + std::to_string(mass_number);
            ion.mass_kg = d.mass_u * constants::atomic_mass_kg;
            ion.charge_C = constants::elementary_charge_C;
            ion.transition.wavelength_m = 866.0e-9;
            ion.transition.gamma_rad_s = constants::two_pi * 11.0e6;
            ion.transition.dipole_moment_C_m = 1.0938e-29;
            ion.transition.isotope_shift_hz = d.shift_866_hz;
            return ion;
        }
    }
    throw ConfigError("no built-in data for calcium isotope " + std::to_string(mass_number));
}

std::vector<IonSpecies> default_species_table() {
    return {calcium_ion(40), calcium_ion(44), calcium_ion(48)};
}

}  // namespace icct
