// icct: linear Paul trap / ion Coulomb crystal / optical cavity toolkit CLI.
//
// Subcommands map one-to-one onto the library: trap-params, crystal, cavity,
// ions-in-mode, sweep, simulate, fit. Every command computes a single result
// object; --json prints it verbatim, otherwise a human-readable table is
// rendered from the same object.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "icct/cavity.hpp"
#include "icct/config.hpp"
#include "icct/constants.hpp"
#include "icct/crystal.hpp"
#include "icct/fit.hpp"
#include "icct/md/observables.hpp"
#include "icct/md/sim.hpp"
#include "icct/md/trajectory_io.hpp"
#include "icct/optimizer.hpp"
#include "icct/trap.hpp"

using nlohmann::json;

namespace {

constexpr double kTwoPi = icct::constants::two_pi;

struct CommonOpts {
    std::string config_path;
    bool json_out = false;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file");
    cmd->add_flag("--json", opts.json_out, "print the result object as JSON");
    cmd->add_option("--out", opts.out_path, "write the command's data artifact here");
    cmd->add_option("--seed", opts.seed, "override the random seed");
}

icct::ToolConfig load_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) return icct::default_config();
    return icct::load_config_file(opts.config_path);
}

std::string format_si(double value, const char* unit) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g %s", value, unit);
    return buf;
}

std::string format_freq(double hz) {
    char buf[64];
    if (std::abs(hz) >= 1e9) {
        std::snprintf(buf, sizeof buf, "%.4g GHz", hz / 1e9);
    } else if (std::abs(hz) >= 1e6) {
        std::snprintf(buf, sizeof buf, "%.4g MHz", hz / 1e6);
    } else if (std::abs(hz) >= 1e3) {
        std::snprintf(buf, sizeof buf, "%.4g kHz", hz / 1e3);
    } else {
        std::snprintf(buf, sizeof buf, "%.4g Hz", hz);
    }
    return buf;
}

void print_kv(const std::string& key, const std::string& value) {
    std::printf("  %-26s %s\n", key.c_str(), value.c_str());
}

// ---------------------------------------------------------------- trap-params

json run_trap_params(const icct::ToolConfig& config) {
    const icct::IonSpecies& ion = config.find_species(config.ion);
    const double wz = icct::axial_frequency(config.trap, config.drive, ion);
    const double wr = icct::radial_frequency(config.trap, config.drive, ion);
    const auto q = icct::mathieu_q(config.trap, config.drive, ion);
    const double rho = icct::crystal_density(config.trap, config.drive, ion);

    json out;
    out["command"] = "trap-params";
    out["ion"] = ion.label;
    out["u_rf_volts"] = config.drive.u_rf_volts;
    out["u_end_volts"] = config.drive.u_end_volts;
    out["omega_z_rad_s"] = wz;
    out["f_z_hz"] = wz / kTwoPi;
    out["omega_r_rad_s"] = wr;
    out["f_r_hz"] = wr / kTwoPi;
    out["mathieu_q"] = q.q;
    out["stability"] = icct::to_string(q.flag);
    out["density_m3"] = rho;
    out["density_cm3"] = rho * 1e-6;
    return out;
}

void render_trap_params(const json& r) {
    std::printf("trap parameters (%s, U_rf = %g V, U_end = %g V)\n",
                r["ion"].get<std::string>().c_str(), r["u_rf_volts"].get<double>(),
                r["u_end_volts"].get<double>());
    print_kv("axial frequency f_z", format_freq(r["f_z_hz"].get<double>()));
    print_kv("radial frequency f_r", format_freq(r["f_r_hz"].get<double>()));
    char qline[64];
    std::snprintf(qline, sizeof qline, "%.4g  [%s]", r["mathieu_q"].get<double>(),
                  r["stability"].get<std::string>().c_str());
    print_kv("mathieu q", qline);
    char rho[96];
    std::snprintf(rho, sizeof rho, "%.4g m^-3  (%.4g cm^-3)", r["density_m3"].get<double>(),
                  r["density_cm3"].get<double>());
    print_kv("crystal density", rho);
}

// -------------------------------------------------------------------- crystal

json crystal_to_json(const icct::CrystalSpec& spec) {
    json out;
    out["ion"] = spec.species.label;
    out["ion_count"] = spec.ion_count;
    out["density_m3"] = spec.density_m3;
    out["half_length_m"] = spec.half_length_m;
    out["length_m"] = 2.0 * spec.half_length_m;
    out["radius_m"] = spec.radius_m;
    out["aspect_ratio"] =
        spec.radius_m > 0.0 ? spec.half_length_m / spec.radius_m : 0.0;
    out["point_like"] = spec.point_like;
    return out;
}

json run_crystal(const icct::ToolConfig& config, std::optional<double> count,
                 std::optional<double> length, const std::string& two_component) {
    json out;
    out["command"] = "crystal";
    out["u_rf_volts"] = config.drive.u_rf_volts;
    out["u_end_volts"] = config.drive.u_end_volts;

    if (!two_component.empty()) {
        // "LabelA:countA,LabelB:countB"
        std::vector<std::pair<std::string, double>> parts;
        std::istringstream is(two_component);
        std::string entry;
        while (std::getline(is, entry, ',')) {
            const auto colon = entry.find(':');
            if (colon == std::string::npos)
                throw icct::ConfigError("--two-component: expected Label:count pairs");
            double count = 0.0;
            try {
                count = std::stod(entry.substr(colon + 1));
            } catch (const std::exception&) {
                throw icct::ConfigError("--two-component: bad count in '" + entry + "'");
            }
            parts.emplace_back(entry.substr(0, colon), count);
        }
        if (parts.size() != 2)
            throw icct::ConfigError("--two-component: exactly two species required");
        const auto result = icct::two_component_structure(
            config.trap, config.drive, config.find_species(parts[0].first),
            config.find_species(parts[1].first), parts[0].second, parts[1].second);
        out["two_component"] = {
            {"inner", crystal_to_json(result.inner)},
            {"outer", crystal_to_json(result.outer)},
            {"boundary_radius_m", result.boundary_radius_m},
            {"total_length_m", result.total_length_m},
            {"outer_radius_m", result.outer_radius_m},
            {"long_crystal_ok", result.long_crystal_ok},
        };
        return out;
    }

    const icct::IonSpecies& ion = config.find_species(config.ion);
    icct::CrystalSpec spec;
    if (count.has_value()) {
        spec = icct::spheroid_from_count(config.trap, config.drive, ion, *count);
    } else if (length.has_value()) {
        const double n = icct::count_from_length(config.trap, config.drive, ion, *length);
        spec = icct::spheroid_from_count(config.trap, config.drive, ion, n);
    } else {
        throw icct::ConfigError("crystal: need --count, --length or --two-component");
    }
    out["crystal"] = crystal_to_json(spec);
    return out;
}

void render_crystal(const json& r) {
    std::printf("crystal model (U_rf = %g V, U_end = %g V)\n", r["u_rf_volts"].get<double>(),
                r["u_end_volts"].get<double>());
    if (r.contains("two_component")) {
        const json& t = r["two_component"];
        print_kv("inner species", t["inner"]["ion"].get<std::string>());
        print_kv("outer species", t["outer"]["ion"].get<std::string>());
        print_kv("boundary radius", format_si(t["boundary_radius_m"].get<double>(), "m"));
        print_kv("total length", format_si(t["total_length_m"].get<double>(), "m"));
        print_kv("outer radius", format_si(t["outer_radius_m"].get<double>(), "m"));
        print_kv("long-crystal limit ok",
                 t["long_crystal_ok"].get<bool>() ? "yes" : "no");
        return;
    }
    const json& c = r["crystal"];
    if (c["point_like"].get<bool>())
        std::fprintf(stderr, "warning: single ion, point crystal (zero extent)\n");
    print_kv("ion count", format_si(c["ion_count"].get<double>(), ""));
    char rho[96];
    std::snprintf(rho, sizeof rho, "%.4g m^-3  (%.4g cm^-3)", c["density_m3"].get<double>(),
                  c["density_m3"].get<double>() * 1e-6);
    print_kv("density", rho);
    print_kv("length (2a)", format_si(c["length_m"].get<double>(), "m"));
    print_kv("radius R", format_si(c["radius_m"].get<double>(), "m"));
    print_kv("aspect ratio a/R", format_si(c["aspect_ratio"].get<double>(), ""));
}

// --------------------------------------------------------------------- cavity

json run_cavity(const icct::ToolConfig& config) {
    const icct::CavitySpec& cav = config.cavity;
    icct::validate(cav);
    const icct::IonSpecies& ion = config.find_species(config.ion);

    const double fsr = icct::free_spectral_range(cav);
    const auto mode = icct::waist_from_geometry(cav);
    const double kappa = icct::cavity_decay_rate(cav.linewidth_fwhm_hz);
    const double g0 = icct::single_ion_coupling(ion, mode);

    json out;
    out["command"] = "cavity";
    out["ion"] = ion.label;
    out["length_m"] = cav.length_m;
    out["fsr_hz"] = fsr;
    out["length_from_fsr_m"] = icct::length_from_fsr(fsr);
    out["finesse_from_linewidth"] = icct::finesse_from_linewidth(fsr, cav.linewidth_fwhm_hz);
    out["finesse_from_losses"] = icct::finesse_from_losses(cav);
    out["kappa_rad_s"] = kappa;
    out["kappa_over_2pi_hz"] = kappa / kTwoPi;
    out["waist_m"] = mode.waist_m;
    out["rayleigh_range_m"] = mode.rayleigh_range_m;
    out["mode_volume_m3"] = mode.mode_volume_m3;
    out["g0_rad_s"] = g0;
    out["g0_over_2pi_hz"] = g0 / kTwoPi;
    out["strong_coupling_n_min"] = icct::strong_coupling_threshold(ion, mode, kappa);
    return out;
}

void render_cavity(const json& r) {
    std::printf("cavity characterization (%s transition)\n",
                r["ion"].get<std::string>().c_str());
    print_kv("length", format_si(r["length_m"].get<double>(), "m"));
    print_kv("free spectral range", format_freq(r["fsr_hz"].get<double>()));
    print_kv("finesse (linewidth)", format_si(r["finesse_from_linewidth"].get<double>(), ""));
    print_kv("finesse (losses)", format_si(r["finesse_from_losses"].get<double>(), ""));
    print_kv("kappa / 2pi", format_freq(r["kappa_over_2pi_hz"].get<double>()));
    print_kv("waist w0", format_si(r["waist_m"].get<double>(), "m"));
    print_kv("mode volume", format_si(r["mode_volume_m3"].get<double>(), "m^3"));
    print_kv("g0 / 2pi", format_freq(r["g0_over_2pi_hz"].get<double>()));
    print_kv("strong-coupling N_min",
             std::to_string(r["strong_coupling_n_min"].get<long>()));
}

// --------------------------------------------------------------- ions-in-mode

json run_ions_in_mode(const icct::ToolConfig& config, std::optional<double> count,
                      std::optional<double> length) {
    const icct::IonSpecies& ion = config.find_species(config.ion);
    icct::validate(config.cavity);
    const auto mode = icct::waist_from_geometry(config.cavity);

    icct::CrystalSpec spec;
    if (count.has_value()) {
        spec = icct::spheroid_from_count(config.trap, config.drive, ion, *count);
    } else if (length.has_value()) {
        const double n = icct::count_from_length(config.trap, config.drive, ion, *length);
        spec = icct::spheroid_from_count(config.trap, config.drive, ion, n);
    } else {
        throw icct::ConfigError("ions-in-mode: need --count or --length");
    }

    const auto in_mode = icct::ions_in_mode(spec, mode);
    const double kappa = icct::cavity_decay_rate(config.cavity.linewidth_fwhm_hz);

    json out;
    out["command"] = "ions-in-mode";
    out["crystal"] = crystal_to_json(spec);
    out["waist_m"] = mode.waist_m;
    out["n_in_mode"] = in_mode.n_closed_form;
    out["n_in_mode_quadrature"] = in_mode.n_quadrature;
    out["rel_difference"] = in_mode.rel_difference;
    out["g_collective_rad_s"] = in_mode.collective_coupling_rad_s;
    out["g_collective_over_2pi_hz"] = in_mode.collective_coupling_rad_s / kTwoPi;
    out["truncation_significant"] = in_mode.truncation_significant;
    out["strong_coupling_n_min"] =
        icct::strong_coupling_threshold(ion, mode, kappa);
    return out;
}

void render_ions_in_mode(const json& r) {
    std::printf("ions in the cavity mode\n");
    print_kv("crystal length", format_si(r["crystal"]["length_m"].get<double>(), "m"));
    char rho[96];
    std::snprintf(rho, sizeof rho, "%.4g m^-3", r["crystal"]["density_m3"].get<double>());
    print_kv("crystal density", rho);
    print_kv("N (closed form)", format_si(r["n_in_mode"].get<double>(), ""));
    print_kv("N (quadrature)", format_si(r["n_in_mode_quadrature"].get<double>(), ""));
    char rel[64];
    std::snprintf(rel, sizeof rel, "%.3g %%", 100.0 * r["rel_difference"].get<double>());
    print_kv("closed vs quadrature", rel);
    print_kv("g0 sqrt(N) / 2pi", format_freq(r["g_collective_over_2pi_hz"].get<double>()));
    print_kv("strong-coupling N_min",
             std::to_string(r["strong_coupling_n_min"].get<long>()));
    if (r["truncation_significant"].get<bool>())
        std::printf("  note: crystal radius < 2 w(z); radial truncation significant\n");
}

// ---------------------------------------------------------------------- sweep

icct::StabilityConstraint make_constraint(const std::string& name) {
    if (name == "default") return icct::StabilityConstraint::default_table();
    if (name == "none") return icct::StabilityConstraint::unconstrained();
    std::ifstream file(name);
    if (!file) throw icct::ConfigError("cannot open constraint table '" + name + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return icct::StabilityConstraint::from_csv(buf.str());
}

json run_sweep(const icct::ToolConfig& config, const std::string& constraint_override,
               const std::string& out_path) {
    const icct::IonSpecies& ion = config.find_species(config.ion);
    icct::validate(config.cavity);
    const auto mode = icct::waist_from_geometry(config.cavity);
    const double kappa = icct::cavity_decay_rate(config.cavity.linewidth_fwhm_hz);

    const std::string constraint_name =
        constraint_override.empty() ? config.sweep.constraint : constraint_override;
    const auto constraint = make_constraint(constraint_name);

    icct::SweepGrid grid;
    const icct::SweepSettings& s = config.sweep;
    for (double u = s.u_rf_min_volts; u <= s.u_rf_max_volts + 1e-9; u += s.u_rf_step_volts)
        grid.u_rf_volts.push_back(u);
    for (double u = s.u_end_min_volts; u <= s.u_end_max_volts + 1e-9; u += s.u_end_step_volts)
        grid.u_end_volts.push_back(u);

    const auto result = icct::sweep(grid, config.trap, ion, mode, kappa, s.n_total, constraint);

    const std::string csv_path = out_path.empty() ? "sweep.csv" : out_path;
    std::ofstream csv(csv_path);
    if (!csv) throw icct::Error("cannot write sweep CSV to '" + csv_path + "'");
    icct::write_sweep_csv(csv, result);

    std::size_t feasible = 0;
    for (const auto& p : result.points)
        if (p.feasible) ++feasible;

    json out = json::parse(icct::sweep_summary_json(result));
    out["command"] = "sweep";
    out["ion"] = ion.label;
    out["constraint"] = constraint_name;
    out["n_total"] = s.n_total;
    out["feasible_points"] = feasible;
    out["csv_path"] = csv_path;
    return out;
}

void render_sweep(const json& r) {
    std::printf("voltage sweep (%s, N_total = %g, constraint: %s)\n",
                r["ion"].get<std::string>().c_str(), r["n_total"].get<double>(),
                r["constraint"].get<std::string>().c_str());
    const json& a = r["argmax"];
    char line[128];
    std::snprintf(line, sizeof line, "U_rf = %g V, U_end = %g V", a["u_rf_volts"].get<double>(),
                  a["u_end_volts"].get<double>());
    print_kv("best point", line);
    print_kv("N in mode", format_si(a["n_in_mode"].get<double>(), "ions"));
    print_kv("g0 sqrt(N) / 2pi", format_freq(a["g_coll_rad_s"].get<double>() / kTwoPi));
    print_kv("strong-coupling N_min",
             std::to_string(r["strong_coupling_n_min"].get<long>()));
    std::string crossings;
    for (const auto& v : r["threshold_crossings_v"]) {
        if (!crossings.empty()) crossings += ", ";
        crossings += format_si(v.get<double>(), "V");
    }
    print_kv("threshold crossings", crossings.empty() ? "none" : crossings);
    print_kv("points (feasible/total)", std::to_string(r["feasible_points"].get<std::size_t>()) +
                                            "/" +
                                            std::to_string(r["grid_points"].get<std::size_t>()));
    print_kv("csv written to", r["csv_path"].get<std::string>());
}

// ------------------------------------------------------------------- simulate

json run_simulate(const icct::ToolConfig& config, std::optional<std::uint64_t> seed,
                  const std::string& out_path, const std::string& snapshot_path) {
    icct::md::SimConfig sim_config = icct::to_sim_config(config);
    if (seed.has_value()) sim_config.seed = *seed;

    json out;
    out["command"] = "simulate";
    out["mode"] = config.md.mode;
    out["n_ions"] = sim_config.total_ions();
    out["force_model"] = icct::md::to_string(sim_config.force_model);
    out["seed"] = sim_config.seed;

    auto species_temperatures = [&](const icct::md::Simulation& sim) {
        json temps = json::object();
        for (const auto& [idx, count] : sim_config.ion_counts) {
            if (count == 0) continue;
            temps[sim_config.species[idx].label] =
                sim.kinetic_temperature_k(static_cast<std::uint32_t>(idx));
        }
        return temps;
    };

    icct::md::SimState final_state;
    if (config.md.mode == "relax") {
        final_state = icct::md::relax_to_crystal(sim_config);
        icct::md::Simulation sim(sim_config, final_state);
        out["kernel"] = icct::md::kernel_name(sim.active_kernel());
        out["final_temperature_k"] = sim.kinetic_temperature_k();
        out["species_temperatures_k"] = species_temperatures(sim);
    } else if (config.md.mode == "run") {
        icct::md::Simulation sim(sim_config, icct::md::seeded_spheroid_state(sim_config));
        out["kernel"] = icct::md::kernel_name(sim.active_kernel());
        const auto steps =
            static_cast<std::size_t>(sim_config.duration_s / sim_config.timestep_s);
        std::ofstream traj;
        if (!out_path.empty()) {
            traj.open(out_path);
            if (!traj) throw icct::Error("cannot write trajectory to '" + out_path + "'");
            icct::md::write_trajectory_header(traj);
        }
        const std::size_t every = std::max<std::size_t>(1, config.md.sample_every);
        for (std::size_t i = 0; i < steps; ++i) {
            sim.step();
            if (traj.is_open() && i % every == 0)
                icct::md::append_trajectory_frame(traj, sim.state());
        }
        out["steps"] = steps;
        out["final_temperature_k"] = sim.kinetic_temperature_k();
        out["species_temperatures_k"] = species_temperatures(sim);
        if (!out_path.empty()) out["trajectory_path"] = out_path;
        final_state = sim.state();
    } else {
        throw icct::ConfigError("md.mode must be 'relax' or 'run'");
    }

    out["final_time_s"] = final_state.time_s;
    const auto density = icct::md::estimate_density(final_state);
    out["density_estimate"] = {
        {"density_m3", density.density_m3},
        {"semi_axis_z_m", density.semi_axis_z_m},
        {"semi_axis_r_m", density.semi_axis_r_m},
        {"nn_spacing_m", density.nn_spacing_m},
        {"wigner_seitz_m3", density.wigner_seitz_m3},
    };

    // two-species runs: report the radial core/shell structure, lighter
    // mass-to-charge species inside
    if (sim_config.ion_counts.size() == 2) {
        const auto idx_a = sim_config.ion_counts[0].first;
        const auto idx_b = sim_config.ion_counts[1].first;
        const auto moq = [&](std::uint32_t i) {
            return sim_config.species[i].mass_kg / sim_config.species[i].charge_C;
        };
        const std::uint32_t inner = moq(idx_a) <= moq(idx_b) ? idx_a : idx_b;
        const std::uint32_t outer = moq(idx_a) <= moq(idx_b) ? idx_b : idx_a;
        const auto sep = icct::md::radial_separation(final_state, inner, outer);
        out["radial_separation"] = {
            {"inner", sim_config.species[inner].label},
            {"outer", sim_config.species[outer].label},
            {"boundary_radius_m", sep.boundary_radius_m},
            {"interface_midpoint_m", sep.interface_midpoint_m},
            {"inner_mean_radius_m", sep.inner_mean_radius_m},
            {"outer_mean_radius_m", sep.outer_mean_radius_m},
            {"ordered", sep.ordered},
        };
    }

    if (!snapshot_path.empty()) {
        std::ofstream snap(snapshot_path);
        if (!snap) throw icct::Error("cannot write snapshot to '" + snapshot_path + "'");
        icct::md::write_snapshot(snap, final_state);
        out["snapshot_path"] = snapshot_path;
    }
    return out;
}

void render_simulate(const json& r) {
    std::printf("molecular dynamics (%s mode, %s forces)\n",
                r["mode"].get<std::string>().c_str(),
                r["force_model"].get<std::string>().c_str());
    print_kv("ions", std::to_string(r["n_ions"].get<std::size_t>()));
    print_kv("kernel", r["kernel"].get<std::string>());
    print_kv("final time", format_si(r["final_time_s"].get<double>(), "s"));
    print_kv("kinetic temperature", format_si(r["final_temperature_k"].get<double>(), "K"));
    const json& d = r["density_estimate"];
    char rho[96];
    std::snprintf(rho, sizeof rho, "%.4g m^-3", d["density_m3"].get<double>());
    print_kv("density (moment fit)", rho);
    print_kv("semi-axis z", format_si(d["semi_axis_z_m"].get<double>(), "m"));
    print_kv("semi-axis r", format_si(d["semi_axis_r_m"].get<double>(), "m"));
    if (r.contains("radial_separation")) {
        const json& sep = r["radial_separation"];
        std::printf("  radial separation: %s inside %s (%s), core radius %s\n",
                    sep["inner"].get<std::string>().c_str(),
                    sep["outer"].get<std::string>().c_str(),
                    sep["ordered"].get<bool>() ? "ordered" : "NOT ordered",
                    format_si(sep["boundary_radius_m"].get<double>(), "m").c_str());
    }
    if (r.contains("trajectory_path"))
        print_kv("trajectory", r["trajectory_path"].get<std::string>());
    if (r.contains("snapshot_path")) print_kv("snapshot", r["snapshot_path"].get<std::string>());
}

// ------------------------------------------------------------------------ fit

json run_fit(const icct::ToolConfig& config, const std::string& type,
             const std::string& input_path, bool weighted, const std::string& isotope) {
    json out;
    out["command"] = "fit";
    out["type"] = type;

    if (!isotope.empty()) {
        const icct::IonSpecies& s = config.find_species(isotope);
        out["isotope"] = {
            {"label", s.label},
            {"isotope_shift_hz", s.transition.isotope_shift_hz},
        };
    }

    if (!input_path.empty()) {
        std::ifstream file(input_path);
        if (!file) throw icct::ConfigError("cannot open series '" + input_path + "'");
        std::ostringstream buf;
        buf << file.rdbuf();
        const icct::TimeSeries series = icct::parse_time_series_csv(buf.str());

        icct::LinearFit fit;
        if (weighted) {
            if (!series.has_sigma())
                throw icct::ConfigError("--weighted requires a sigma column");
            fit = icct::fit_linear_weighted(series.t, series.value, series.sigma);
        } else {
            fit = icct::fit_linear(series.t, series.value);
        }
        out["n_points"] = fit.n_points;
        out["slope"] = fit.slope;
        out["intercept"] = fit.intercept;
        out["slope_err"] = fit.slope_err;
        out["intercept_err"] = fit.intercept_err;
        if (type == "loading") {
            out["loading_rate_ions_s"] = fit.slope;
        } else if (type == "pzt") {
            out["slope_mhz_per_v"] = fit.slope / 1e6;
            out["slope_err_mhz_per_v"] = fit.slope_err / 1e6;
        }
    } else if (isotope.empty()) {
        throw icct::ConfigError("fit: need --input CSV and/or --isotope label");
    }
    return out;
}

void render_fit(const json& r) {
    std::printf("fit (%s)\n", r["type"].get<std::string>().c_str());
    if (r.contains("slope")) {
        char line[96];
        std::snprintf(line, sizeof line, "%.6g +- %.3g", r["slope"].get<double>(),
                      r["slope_err"].get<double>());
        print_kv("slope", line);
        std::snprintf(line, sizeof line, "%.6g +- %.3g", r["intercept"].get<double>(),
                      r["intercept_err"].get<double>());
        print_kv("intercept", line);
        print_kv("points", std::to_string(r["n_points"].get<std::size_t>()));
        if (r.contains("loading_rate_ions_s"))
            print_kv("loading rate", format_si(r["loading_rate_ions_s"].get<double>(), "ions/s"));
        if (r.contains("slope_mhz_per_v"))
            print_kv("pzt response", format_si(r["slope_mhz_per_v"].get<double>(), "MHz/V"));
    }
    if (r.contains("isotope")) {
        print_kv("isotope", r["isotope"]["label"].get<std::string>());
        print_kv("866 nm shift", format_freq(r["isotope"]["isotope_shift_hz"].get<double>()));
    }
}

// sweep and simulate consume --out themselves (CSV artifacts) and pass an
// empty path here; for the analytic commands --out stores the result object.
void emit(const json& result, bool json_out, const std::string& out_path,
          void (*renderer)(const json&)) {
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw icct::Error("cannot write '" + out_path + "'");
        file << result.dump(2) << "\n";
    }
    if (json_out) {
        std::cout << result.dump(2) << std::endl;
    } else {
        renderer(result);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear Paul trap + optical cavity toolkit"};
    app.require_subcommand(1);

    CommonOpts trap_opts;
    CLI::App* trap_cmd = app.add_subcommand("trap-params", "secular frequencies and density");
    add_common(trap_cmd, trap_opts);

    CommonOpts crystal_opts;
    std::optional<double> crystal_count, crystal_length;
    std::string two_component;
    CLI::App* crystal_cmd = app.add_subcommand("crystal", "cold crystal spheroid model");
    add_common(crystal_cmd, crystal_opts);
    crystal_cmd->add_option("--count", crystal_count, "number of ions");
    crystal_cmd->add_option("--length", crystal_length, "total crystal length (m)");
    crystal_cmd->add_option("--two-component", two_component,
                            "two species as LabelA:countA,LabelB:countB");

    CommonOpts cavity_opts;
    CLI::App* cavity_cmd = app.add_subcommand("cavity", "cavity mode characterization");
    add_common(cavity_cmd, cavity_opts);

    CommonOpts ions_opts;
    std::optional<double> ions_count, ions_length;
    CLI::App* ions_cmd = app.add_subcommand("ions-in-mode", "crystal-mode overlap count");
    add_common(ions_cmd, ions_opts);
    ions_cmd->add_option("--count", ions_count, "number of ions in the crystal");
    ions_cmd->add_option("--length", ions_length, "total crystal length (m)");

    CommonOpts sweep_opts;
    std::string constraint_override;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "voltage sweep for ions in mode");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--constraint", constraint_override,
                          "'default', 'none' or a CSV path (u_rf_V,max_length_m)");

    CommonOpts sim_opts;
    std::string snapshot_path;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "molecular dynamics run");
    add_common(sim_cmd, sim_opts);
    sim_cmd->get_option("--out")->description("trajectory CSV (run mode only)");
    sim_cmd->add_option("--snapshot", snapshot_path, "write final positions here");

    CommonOpts fit_opts;
    std::string fit_type = "loading";
    std::string fit_input;
    std::string fit_isotope;
    bool fit_weighted = false;
    CLI::App* fit_cmd = app.add_subcommand("fit", "linear fits of measured series");
    add_common(fit_cmd, fit_opts);
    fit_cmd->add_option("--type", fit_type, "loading | pzt")
        ->check(CLI::IsMember({"loading", "pzt"}));
    fit_cmd->add_option("--input", fit_input, "CSV series (t_s,value[,sigma])");
    fit_cmd->add_flag("--weighted", fit_weighted, "use the sigma column as weights");
    fit_cmd->add_option("--isotope", fit_isotope, "report the isotope's 866 nm shift");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (trap_cmd->parsed()) {
            emit(run_trap_params(load_config(trap_opts)), trap_opts.json_out,
                 trap_opts.out_path, render_trap_params);
        } else if (crystal_cmd->parsed()) {
            emit(run_crystal(load_config(crystal_opts), crystal_count, crystal_length,
                             two_component),
                 crystal_opts.json_out, crystal_opts.out_path, render_crystal);
        } else if (cavity_cmd->parsed()) {
            emit(run_cavity(load_config(cavity_opts)), cavity_opts.json_out,
                 cavity_opts.out_path, render_cavity);
        } else if (ions_cmd->parsed()) {
            emit(run_ions_in_mode(load_config(ions_opts), ions_count, ions_length),
                 ions_opts.json_out, ions_opts.out_path, render_ions_in_mode);
        } else if (sweep_cmd->parsed()) {
            emit(run_sweep(load_config(sweep_opts), constraint_override, sweep_opts.out_path),
                 sweep_opts.json_out, "", render_sweep);
        } else if (sim_cmd->parsed()) {
            emit(run_simulate(load_config(sim_opts), sim_opts.seed, sim_opts.out_path,
                              snapshot_path),
                 sim_opts.json_out, "", render_simulate);
        } else if (fit_cmd->parsed()) {
            emit(run_fit(load_config(fit_opts), fit_type, fit_input, fit_weighted, fit_isotope),
                 fit_opts.json_out, fit_opts.out_path, render_fit);
        }
    } catch (const icct::ConfigError& e) {
        json err = {{"error", {{"type", "config"}, {"message", e.what()}}}};
        std::cerr << err.dump() << std::endl;
        return 2;
    } catch (const icct::InfeasibleError& e) {
        json err = {{"error", {{"type", "infeasible"}, {"message", e.what()}}}};
        std::cerr << err.dump() << std::endl;
        return 3;
    } catch (const icct::ConvergenceError& e) {
        json err = {{"error", {{"type", "convergence"}, {"message", e.what()}}}};
        std::cerr << err.dump() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        json err = {{"error", {{"type", "internal"}, {"message", e.what()}}}};
        std::cerr << err.dump() << std::endl;
        return 1;
    }
    return 0;
}
