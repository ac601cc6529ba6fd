// Built-in calcium ion data for the isotopes used in the experiments.
#pragma once

#include <vector>

#include "icct/trap.hpp"

namespace icct {

// Singly charged calcium isotope with the 866 nm D3/2 -> P1/2 transition data.
// The dipole moment is the value that reproduces the measured single-ion
// coupling of the reference cavity; isotope shifts are relative to 40Ca+.
IonSpecies calcium_ion(int mass_number);

// Default species table: 40Ca+, 44Ca+, 48Ca+.
std::vector<IonSpecies> default_species_table();

}  // namespace icct
