// Tool configuration: plain-text nested key-value with explicit units in the
// key names. Every block is optional; defaults reproduce the reference
// apparatus. Unknown keys are rejected with their line number.
#pragma once

#include <string>
#include <vector>

#include "icct/cavity.hpp"
#include "icct/md/sim.hpp"
#include "icct/trap.hpp"

namespace icct {

struct SweepSettings {
    double u_rf_min_volts = 150.0;
    double u_rf_max_volts = 400.0;
    double u_rf_step_volts = 25.0;
    double u_end_min_volts = 1.0;
    double u_end_max_volts = 5.0;
    double u_end_step_volts = 1.0;
    double n_total = 1.0e5;
    // "default" = built-in table, "none" = unconstrained, else a CSV path
    std::string constraint = "default";
};

struct MdSettings {
    std::string mode = "relax";  // relax | run
    std::string ions = "Ca40:100";
    double timestep_s = 2.5e-9;
    double duration_s = 1.0e-3;
    double beta_axial_kg_s = 2.0e-20;
    double beta_radial_kg_s = 2.0e-20;
    double recoil_kick_m_s = 0.0;
    std::string force_model = "pseudo";
    std::string kernel = "auto";
    double target_temperature_k = 5e-3;
    std::uint64_t seed = 1;
    std::size_t sample_every = 8;
};

struct ToolConfig {
    TrapGeometry trap;
    DriveVoltages drive;
    std::vector<IonSpecies> species;  // built-in calcium table, extendable
    std::string ion = "Ca40";         // species used by single-species commands
    CavitySpec cavity;
    SweepSettings sweep;
    MdSettings md;

    const IonSpecies& find_species(const std::string& label) const;
    std::size_t species_index(const std::string& label) const;
};

ToolConfig default_config();

// Parses `key = value` lines ('#' comments); values overlay the defaults.
ToolConfig parse_config(const std::string& text);
ToolConfig load_config_file(const std::string& path);

// Builds the MD configuration (species table, ion counts, integrator knobs)
// from the md block.
md::SimConfig to_sim_config(const ToolConfig& config);

}  // namespace icct
