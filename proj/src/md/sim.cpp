#include "icct/md/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "icct/constants.hpp"
#include "icct/crystal.hpp"

namespace icct::md {

namespace {
constexpr double kB = constants::boltzmann_J_K;
}

const char* to_string(ForceModel model) {
    switch (model) {
        case ForceModel::full_rf: return "full_rf";
        case ForceModel::pseudopotential: return "pseudo";
        case ForceModel::coulomb_only: return "none";
    }
    return "?";
}

ForceModel force_model_from_name(const std::string& name) {
    if (name == "full_rf") return ForceModel::full_rf;
    if (name == "pseudo" || name == "pseudopotential") return ForceModel::pseudopotential;
    if (name == "none" || name == "coulomb_only") return ForceModel::coulomb_only;
    throw ConfigError("md: unknown force model '" + name + "' (full_rf|pseudo|none)");
}

std::size_t SimConfig::total_ions() const {
    std::size_t n = 0;
    for (const auto& [idx, count] : ion_counts) n += count;
    return n;
}

void SimConfig::validate() const {
    icct::validate(trap);
    icct::validate(voltages);
    if (species.empty()) throw ConfigError("md: species table is empty");
    for (const auto& s : species) icct::validate(s);
    for (const auto& [idx, count] : ion_counts) {
        if (idx >= species.size()) throw ConfigError("md: ion count references unknown species");
        (void)count;
    }
    const double rf_period = constants::two_pi / trap.omega_rf_rad_s;
    if (!(timestep_s > 0.0) || timestep_s > rf_period / 100.0)
        throw ConfigError("md: timestep must be positive and at most 1/100 of the rf period");
    if (!(duration_s > 0.0)) throw ConfigError("md: duration must be > 0");
    if (beta_axial_kg_s < 0.0 || beta_radial_kg_s < 0.0)
        throw ConfigError("md: friction coefficients must be >= 0");
    if (recoil_kick_m_s < 0.0) throw ConfigError("md: recoil kick must be >= 0");
    if (!(min_separation_m > 0.0)) throw ConfigError("md: min separation must be > 0");
}

void SimState::validate(std::size_t n_species) const {
    const std::size_t n = x.size();
    if (y.size() != n || z.size() != n || vx.size() != n || vy.size() != n || vz.size() != n ||
        species.size() != n)
        throw ConfigError("md: state arrays have mismatched lengths");
    auto finite = [](const std::vector<double>& a) {
        for (double v : a)
            if (!std::isfinite(v)) return false;
        return true;
    };
    if (!finite(x) || !finite(y) || !finite(z) || !finite(vx) || !finite(vy) || !finite(vz))
        throw ConfigError("md: state contains non-finite coordinates");
    for (auto s : species)
        if (s >= n_species) throw ConfigError("md: state references unknown species index");
}

Simulation::Simulation(SimConfig config, SimState initial)
    : config_(std::move(config)), state_(std::move(initial)), kernel_(KernelKind::scalar),
      rng_(state_.rng_seed) {
    config_.validate();
    state_.validate(config_.species.size());
    kernel_ = resolve_kernel(config_.kernel);

    const std::size_t n = state_.size();
    mass_.resize(n);
    inv_mass_.resize(n);
    charge_.resize(n);
    fric_ax_.resize(n);
    fric_rad_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const IonSpecies& s = config_.species[state_.species[i]];
        mass_[i] = s.mass_kg;
        inv_mass_[i] = 1.0 / s.mass_kg;
        charge_[i] = s.charge_C;
        fric_ax_[i] = std::exp(-config_.beta_axial_kg_s * config_.timestep_s / s.mass_kg);
        fric_rad_[i] = std::exp(-config_.beta_radial_kg_s * config_.timestep_s / s.mass_kg);
    }
    fx_.assign(n, 0.0);
    fy_.assign(n, 0.0);
    fz_.assign(n, 0.0);

    wr2_.resize(config_.species.size());
    wz2_.resize(config_.species.size());
    for (std::size_t s = 0; s < config_.species.size(); ++s) {
        const double wz = axial_frequency(config_.trap, config_.voltages, config_.species[s]);
        wz2_[s] = wz * wz;
        if (config_.force_model == ForceModel::pseudopotential) {
            const double wr =
                radial_frequency(config_.trap, config_.voltages, config_.species[s]);
            wr2_[s] = wr * wr;
        } else {
            wr2_[s] = 0.0;
        }
    }
}

void Simulation::compute_forces(double time_s) {
    const std::size_t n = state_.size();
    const auto result = coulomb_forces(kernel_, n, state_.x.data(), state_.y.data(),
                                       state_.z.data(), charge_.data(), fx_.data(), fy_.data(),
                                       fz_.data());
    const double guard2 = config_.min_separation_m * config_.min_separation_m;
    if (n > 1 && result.min_separation_sq < guard2) {
        std::ostringstream msg;
        msg << "collision: pair separation " << std::sqrt(result.min_separation_sq)
            << " m below guard " << config_.min_separation_m << " m at t=" << time_s << " s";
        throw ConvergenceError(msg.str());
    }

    switch (config_.force_model) {
        case ForceModel::full_rf: {
            const TrapGeometry& g = config_.trap;
            const double rf_coef = config_.voltages.u_rf_volts / (g.r0_m * g.r0_m) *
                                   std::cos(g.omega_rf_rad_s * time_s);
            const double end_half =
                g.eta * config_.voltages.u_end_volts / (g.z_half_m * g.z_half_m);
            for (std::size_t i = 0; i < n; ++i) {
                const double q = charge_[i];
                fx_[i] += q * (end_half - rf_coef) * state_.x[i];
                fy_[i] += q * (end_half + rf_coef) * state_.y[i];
                fz_[i] += -2.0 * q * end_half * state_.z[i];
            }
            break;
        }
        case ForceModel::pseudopotential: {
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint32_t s = state_.species[i];
                const double m = mass_[i];
                fx_[i] += -m * wr2_[s] * state_.x[i];
                fy_[i] += -m * wr2_[s] * state_.y[i];
                fz_[i] += -m * wz2_[s] * state_.z[i];
            }
            break;
        }
        case ForceModel::coulomb_only:
            break;
    }
    forces_valid_ = true;
}

void Simulation::step() {
    const double dt = config_.timestep_s;
    const std::size_t n = state_.size();

    if (!forces_valid_) compute_forces(state_.time_s);

    for (std::size_t i = 0; i < n; ++i) {
        const double h = 0.5 * dt * inv_mass_[i];
        state_.vx[i] += h * fx_[i];
        state_.vy[i] += h * fy_[i];
        state_.vz[i] += h * fz_[i];
        state_.x[i] += dt * state_.vx[i];
        state_.y[i] += dt * state_.vy[i];
        state_.z[i] += dt * state_.vz[i];
    }

    compute_forces(state_.time_s + dt);

    for (std::size_t i = 0; i < n; ++i) {
        const double h = 0.5 * dt * inv_mass_[i];
        state_.vx[i] += h * fx_[i];
        state_.vy[i] += h * fy_[i];
        state_.vz[i] += h * fz_[i];
    }

    if (config_.beta_axial_kg_s > 0.0 || config_.beta_radial_kg_s > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            state_.vx[i] *= fric_rad_[i];
            state_.vy[i] *= fric_rad_[i];
            state_.vz[i] *= fric_ax_[i];
        }
    }
    if (config_.recoil_kick_m_s > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            state_.vx[i] += config_.recoil_kick_m_s * rng_.normal();
            state_.vy[i] += config_.recoil_kick_m_s * rng_.normal();
            state_.vz[i] += config_.recoil_kick_m_s * rng_.normal();
        }
    }

    state_.time_s += dt;
}

void Simulation::run(std::size_t n_steps) {
    for (std::size_t i = 0; i < n_steps; ++i) step();
}

double Simulation::kinetic_energy() const {
    double e = 0.0;
    for (std::size_t i = 0; i < state_.size(); ++i) {
        const double v2 = state_.vx[i] * state_.vx[i] + state_.vy[i] * state_.vy[i] +
                          state_.vz[i] * state_.vz[i];
        e += 0.5 * mass_[i] * v2;
    }
    return e;
}

double Simulation::potential_energy() const {
    const std::size_t n = state_.size();
    double e = 0.0;
    switch (config_.force_model) {
        case ForceModel::full_rf: {
            const TrapGeometry& g = config_.trap;
            const double rf_half = 0.5 * config_.voltages.u_rf_volts / (g.r0_m * g.r0_m) *
                                   std::cos(g.omega_rf_rad_s * state_.time_s);
            const double end_half =
                g.eta * config_.voltages.u_end_volts / (g.z_half_m * g.z_half_m);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = state_.x[i], y = state_.y[i], z = state_.z[i];
                const double phi = rf_half * (x * x - y * y) +
                                   end_half * (z * z - 0.5 * (x * x + y * y));
                e += charge_[i] * phi;
            }
            break;
        }
        case ForceModel::pseudopotential: {
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint32_t s = state_.species[i];
                e += 0.5 * mass_[i] *
                     (wr2_[s] * (state_.x[i] * state_.x[i] + state_.y[i] * state_.y[i]) +
                      wz2_[s] * state_.z[i] * state_.z[i]);
            }
            break;
        }
        case ForceModel::coulomb_only:
            break;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = state_.x[i] - state_.x[j];
            const double dy = state_.y[i] - state_.y[j];
            const double dz = state_.z[i] - state_.z[j];
            e += constants::coulomb_N_m2_C2 * charge_[i] * charge_[j] /
                 std::sqrt(dx * dx + dy * dy + dz * dz);
        }
    }
    return e;
}

double Simulation::kinetic_temperature_k() const {
    const std::size_t n = state_.size();
    if (n == 0) return 0.0;
    return 2.0 * kinetic_energy() / (3.0 * kB * static_cast<double>(n));
}

double Simulation::kinetic_temperature_k(std::uint32_t species_index) const {
    double e = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < state_.size(); ++i) {
        if (state_.species[i] != species_index) continue;
        const double v2 = state_.vx[i] * state_.vx[i] + state_.vy[i] * state_.vy[i] +
                          state_.vz[i] * state_.vz[i];
        e += 0.5 * mass_[i] * v2;
        ++count;
    }
    if (count == 0) return 0.0;
    return 2.0 * e / (3.0 * kB * static_cast<double>(count));
}

SimState seeded_spheroid_state(const SimConfig& config) {
    config.validate();
    const std::size_t n = config.total_ions();
    if (n == 0) throw ConfigError("md: no ions requested");

    // Model volume of the target crystal, inflated so the start is loose.
    double volume = 0.0;
    for (const auto& [idx, count] : config.ion_counts) {
        const double rho =
            crystal_density(config.trap, config.voltages, config.species[idx]);
        volume += static_cast<double>(count) / rho;
    }
    const IonSpecies& lead = config.species[config.ion_counts.front().first];
    const double wz = axial_frequency(config.trap, config.voltages, lead);
    const double wr = radial_frequency(config.trap, config.voltages, lead);  // may throw
    double alpha = 1.0;
    if (wz > 0.0) alpha = aspect_from_frequency_ratio((wz * wz) / (wr * wr));

    const double scale = 1.3;
    const double radius =
        scale * std::cbrt(3.0 * volume / (4.0 * constants::pi * alpha));
    const double half_len = alpha * radius;
    const double min_sep = 0.6 * std::cbrt(volume / static_cast<double>(n));

    SimState state;
    state.rng_seed = config.seed;
    Rng rng(config.seed);
    state.x.reserve(n);

    for (const auto& [spec_idx, count] : config.ion_counts) {
        for (std::size_t k = 0; k < count; ++k) {
            for (int attempt = 0;; ++attempt) {
                if (attempt > 20000)
                    throw ConvergenceError("md: failed to place ions without overlap");
                const double px = radius * (2.0 * rng.uniform() - 1.0);
                const double py = radius * (2.0 * rng.uniform() - 1.0);
                const double pz = half_len * (2.0 * rng.uniform() - 1.0);
                if ((px * px + py * py) / (radius * radius) +
                        pz * pz / (half_len * half_len) >
                    1.0)
                    continue;
                bool clear = true;
                for (std::size_t i = 0; i < state.x.size(); ++i) {
                    const double dx = px - state.x[i];
                    const double dy = py - state.y[i];
                    const double dz = pz - state.z[i];
                    if (dx * dx + dy * dy + dz * dz < min_sep * min_sep) {
                        clear = false;
                        break;
                    }
                }
                if (!clear) continue;
                state.x.push_back(px);
                state.y.push_back(py);
                state.z.push_back(pz);
                state.species.push_back(spec_idx);
                break;
            }
        }
    }

    // small thermal velocities so the start is not pathologically symmetric
    const double t0 = 0.05;  // K
    state.vx.resize(n);
    state.vy.resize(n);
    state.vz.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sigma =
            std::sqrt(kB * t0 / config.species[state.species[i]].mass_kg);
        state.vx[i] = sigma * rng.normal();
        state.vy[i] = sigma * rng.normal();
        state.vz[i] = sigma * rng.normal();
    }
    return state;
}

SimState relax_to_crystal(const SimConfig& config) {
    const std::size_t n = config.total_ions();
    if (n > 2048) throw ConfigError("md: relax_to_crystal supports at most 2048 ions");
    if (!(config.beta_axial_kg_s > 0.0 || config.beta_radial_kg_s > 0.0))
        throw ConfigError("md: relax_to_crystal needs a nonzero friction coefficient");

    Simulation sim(config, seeded_spheroid_state(config));

    const double dt = config.timestep_s;
    const auto total_steps = static_cast<std::size_t>(config.duration_s / dt);
    const auto rf_period_steps = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::llround(constants::two_pi /
                                                 (config.trap.omega_rf_rad_s * dt))));
    const std::size_t block = std::max<std::size_t>(1000, 2 * rf_period_steps);

    // Secular temperature: kinetic energy of rf-period-averaged velocities.
    std::vector<double> sx(n), sy(n), sz(n);
    int quiet_blocks = 0;
    double last_t = 0.0;
    std::size_t steps_done = 0;

    while (steps_done < total_steps) {
        const std::size_t todo = std::min(block, total_steps - steps_done);
        if (todo > rf_period_steps) sim.run(todo - rf_period_steps);

        std::fill(sx.begin(), sx.end(), 0.0);
        std::fill(sy.begin(), sy.end(), 0.0);
        std::fill(sz.begin(), sz.end(), 0.0);
        const std::size_t avg_steps = std::min(todo, rf_period_steps);
        for (std::size_t k = 0; k < avg_steps; ++k) {
            sim.step();
            const SimState& s = sim.state();
            for (std::size_t i = 0; i < n; ++i) {
                sx[i] += s.vx[i];
                sy[i] += s.vy[i];
                sz[i] += s.vz[i];
            }
        }
        steps_done += todo;

        double ke = 0.0;
        const double inv = 1.0 / static_cast<double>(avg_steps);
        for (std::size_t i = 0; i < n; ++i) {
            const double vx = sx[i] * inv, vy = sy[i] * inv, vz = sz[i] * inv;
            ke += 0.5 * config.species[sim.state().species[i]].mass_kg *
                  (vx * vx + vy * vy + vz * vz);
        }
        last_t = 2.0 * ke / (3.0 * kB * static_cast<double>(n));

        quiet_blocks = (last_t < config.target_temperature_k) ? quiet_blocks + 1 : 0;
        if (quiet_blocks >= 3) return sim.state();
    }

    std::ostringstream msg;
    msg << "not crystallized: secular temperature " << last_t << " K above target "
        << config.target_temperature_k << " K after " << config.duration_s << " s";
    throw ConvergenceError(msg.str());
}

}  // namespace icct::md
