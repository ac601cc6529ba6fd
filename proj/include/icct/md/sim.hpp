// Molecular dynamics of trapped ions: full time-dependent rf quadrupole or
// pseudopotential trap forces, direct pairwise Coulomb interaction, axial
// laser-cooling friction and optional recoil kicks.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "icct/md/kernel.hpp"
#include "icct/md/rng.hpp"
#include "icct/trap.hpp"

namespace icct::md {

enum class ForceModel { full_rf, pseudopotential, coulomb_only };

const char* to_string(ForceModel model);
ForceModel force_model_from_name(const std::string& name);

struct SimConfig {
    TrapGeometry trap;
    DriveVoltages voltages;
    std::vector<IonSpecies> species;  // indexed by SimState::species entries
    std::vector<std::pair<std::uint32_t, std::size_t>> ion_counts;  // (species idx, count)

    double timestep_s = 2.5e-9;  // 1/100 of the 4 MHz rf period
    double duration_s = 1.0e-3;
    double beta_axial_kg_s = 0.0;   // cooling friction along z (beam axis)
    double beta_radial_kg_s = 0.0;  // optional direct radial friction
    double recoil_kick_m_s = 0.0;   // per-step rms velocity kick per axis
    ForceModel force_model = ForceModel::full_rf;
    KernelKind kernel = KernelKind::automatic;
    double target_temperature_k = 5e-3;  // crystallization criterion
    double min_separation_m = 1e-9;      // collision guard
    std::uint64_t seed = 1;

    std::size_t total_ions() const;
    void validate() const;
};

struct SimState {
    double time_s = 0.0;
    std::vector<double> x, y, z;     // m
    std::vector<double> vx, vy, vz;  // m/s
    std::vector<std::uint32_t> species;
    std::uint64_t rng_seed = 1;

    std::size_t size() const { return x.size(); }
    void validate(std::size_t n_species) const;
};

class Simulation {
  public:
    Simulation(SimConfig config, SimState initial);

    // One velocity-Verlet step; throws ConvergenceError("collision") if a pair
    // closes below the guard distance.
    void step();
    void run(std::size_t n_steps);

    const SimState& state() const { return state_; }
    const SimConfig& config() const { return config_; }
    KernelKind active_kernel() const { return kernel_; }

    // Instantaneous kinetic energy summed over ions (includes micromotion).
    double kinetic_energy() const;
    // Trap + Coulomb potential energy. Conserved quantity together with the
    // kinetic term only in pseudopotential or coulomb_only mode.
    double potential_energy() const;
    double total_energy() const { return kinetic_energy() + potential_energy(); }

    // Mean kinetic temperature per ion, 2<KE>/(3 kB N).
    double kinetic_temperature_k() const;
    double kinetic_temperature_k(std::uint32_t species_index) const;

    // Forces as evaluated at the current positions (for diagnostics/tests).
    const std::vector<double>& force_x() const { return fx_; }
    const std::vector<double>& force_y() const { return fy_; }
    const std::vector<double>& force_z() const { return fz_; }

  private:
    void compute_forces(double time_s);

    SimConfig config_;
    SimState state_;
    KernelKind kernel_;
    std::vector<double> mass_, inv_mass_, charge_;
    std::vector<double> wr2_, wz2_;  // per-species pseudopotential curvatures
    std::vector<double> fx_, fy_, fz_;
    std::vector<double> fric_ax_, fric_rad_;  // per-ion exp(-beta dt / m)
    Rng rng_;
    bool forces_valid_ = false;
};

// Random non-overlapping placement inside an inflated model spheroid, small
// thermal velocities; deterministic for a given config seed.
SimState seeded_spheroid_state(const SimConfig& config);

// Runs friction cooling from the seeded state until the mean kinetic
// temperature stays below config.target_temperature_k. Throws
// ConvergenceError("not crystallized ...") if the duration budget runs out.
SimState relax_to_crystal(const SimConfig& config);

}  // namespace icct::md
