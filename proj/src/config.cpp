#include "icct/config.hpp"

#include <fstream>
#include <sstream>

#include "icct/constants.hpp"
#include "icct/species.hpp"

namespace icct {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, sep)) out.push_back(part);
    return out;
}

double parse_double(const std::string& value, int line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line_no) + ": key '" + key +
                          "': bad number '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& value, int line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line_no) + ": key '" + key +
                          "': bad integer '" + value + "'");
    }
}

IonSpecies& species_entry(ToolConfig& config, const std::string& label) {
    for (auto& s : config.species)
        if (s.label == label) return s;
    // new species start blank (singly charged); mass and transition data must
    // be given explicitly or validation rejects the config
    IonSpecies fresh;
    fresh.label = label;
    config.species.push_back(fresh);
    return config.species.back();
}

void apply_key(ToolConfig& config, const std::string& key, const std::string& value,
               int line_no) {
    const auto parts = split(key, '.');
    auto bad_key = [&]() -> ConfigError {
        return ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                           "'");
    };
    auto num = [&]() { return parse_double(value, line_no, key); };

    if (parts.size() == 1) {
        if (key == "ion") {
            config.ion = value;
            return;
        }
        throw bad_key();
    }

    const std::string& block = parts[0];
    if (block == "trap" && parts.size() == 2) {
        const std::string& f = parts[1];
        if (f == "r0_m") config.trap.r0_m = num();
        else if (f == "z_half_m") config.trap.z_half_m = num();
        else if (f == "eta") config.trap.eta = num();
        else if (f == "rf_freq_hz") config.trap.omega_rf_rad_s = constants::two_pi * num();
        else throw bad_key();
        return;
    }
    if (block == "drive" && parts.size() == 2) {
        const std::string& f = parts[1];
        if (f == "u_rf_volts") config.drive.u_rf_volts = num();
        else if (f == "u_end_volts") config.drive.u_end_volts = num();
        else throw bad_key();
        return;
    }
    if (block == "species" && parts.size() == 3) {
        IonSpecies& s = species_entry(config, parts[1]);
        const std::string& f = parts[2];
        if (f == "mass_u") s.mass_kg = num() * constants::atomic_mass_kg;
        else if (f == "charge_e") s.charge_C = num() * constants::elementary_charge_C;
        else if (f == "dipole_moment_C_m") s.transition.dipole_moment_C_m = num();
        else if (f == "wavelength_m") s.transition.wavelength_m = num();
        else if (f == "gamma_rad_s") s.transition.gamma_rad_s = num();
        else if (f == "isotope_shift_hz") s.transition.isotope_shift_hz = num();
        else throw bad_key();
        return;
    }
    if (block == "cavity" && parts.size() == 2) {
        const std::string& f = parts[1];
        if (f == "length_m") config.cavity.length_m = num();
        else if (f == "mirror_roc_m") config.cavity.mirror_roc_m = num();
        else if (f == "transmission_in_ppm") config.cavity.transmission_in = num() * 1e-6;
        else if (f == "transmission_out_ppm") config.cavity.transmission_out = num() * 1e-6;
        else if (f == "loss_ppm") config.cavity.intracavity_loss = num() * 1e-6;
        else if (f == "wavelength_m") config.cavity.wavelength_m = num();
        else if (f == "linewidth_fwhm_hz") config.cavity.linewidth_fwhm_hz = num();
        else throw bad_key();
        return;
    }
    if (block == "sweep" && parts.size() == 2) {
        const std::string& f = parts[1];
        if (f == "u_rf_min_volts") config.sweep.u_rf_min_volts = num();
        else if (f == "u_rf_max_volts") config.sweep.u_rf_max_volts = num();
        else if (f == "u_rf_step_volts") config.sweep.u_rf_step_volts = num();
        else if (f == "u_end_min_volts") config.sweep.u_end_min_volts = num();
        else if (f == "u_end_max_volts") config.sweep.u_end_max_volts = num();
        else if (f == "u_end_step_volts") config.sweep.u_end_step_volts = num();
        else if (f == "n_total") config.sweep.n_total = num();
        else if (f == "constraint") config.sweep.constraint = value;
        else throw bad_key();
        return;
    }
    if (block == "md" && parts.size() == 2) {
        const std::string& f = parts[1];
        if (f == "mode") config.md.mode = value;
        else if (f == "ions") config.md.ions = value;
        else if (f == "timestep_s") config.md.timestep_s = num();
        else if (f == "duration_s") config.md.duration_s = num();
        else if (f == "beta_axial_kg_s") config.md.beta_axial_kg_s = num();
        else if (f == "beta_radial_kg_s") config.md.beta_radial_kg_s = num();
        else if (f == "recoil_kick_m_s") config.md.recoil_kick_m_s = num();
        else if (f == "force_model") config.md.force_model = value;
        else if (f == "kernel") config.md.kernel = value;
        else if (f == "target_temperature_k") config.md.target_temperature_k = num();
        else if (f == "seed") config.md.seed = parse_u64(value, line_no, key);
        else if (f == "sample_every")
            config.md.sample_every = static_cast<std::size_t>(parse_u64(value, line_no, key));
        else throw bad_key();
        return;
    }
    throw bad_key();
}

}  // namespace

const IonSpecies& ToolConfig::find_species(const std::string& label) const {
    return species[species_index(label)];
}

std::size_t ToolConfig::species_index(const std::string& label) const {
    for (std::size_t i = 0; i < species.size(); ++i)
        if (species[i].label == label) return i;
    throw ConfigError("unknown species '" + label + "'");
}

ToolConfig default_config() {
    ToolConfig config;
    config.species = default_species_table();
    return config;
}

ToolConfig parse_config(const std::string& text) {
    ToolConfig config = default_config();
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key or value");
        apply_key(config, key, value, line_no);
    }

    validate(config.trap);
    validate(config.drive);
    for (const auto& s : config.species) validate(s);
    validate(config.cavity);
    config.find_species(config.ion);  // must exist
    return config;
}

ToolConfig load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_config(buf.str());
}

md::SimConfig to_sim_config(const ToolConfig& config) {
    md::SimConfig sim;
    sim.trap = config.trap;
    sim.voltages = config.drive;
    sim.species = config.species;
    sim.timestep_s = config.md.timestep_s;
    sim.duration_s = config.md.duration_s;
    sim.beta_axial_kg_s = config.md.beta_axial_kg_s;
    sim.beta_radial_kg_s = config.md.beta_radial_kg_s;
    sim.recoil_kick_m_s = config.md.recoil_kick_m_s;
    sim.force_model = md::force_model_from_name(config.md.force_model);
    sim.kernel = md::kernel_from_name(config.md.kernel);
    sim.target_temperature_k = config.md.target_temperature_k;
    sim.seed = config.md.seed;

    for (const std::string& part : split(config.md.ions, ',')) {
        const std::string entry = trim(part);
        if (entry.empty()) continue;
        const auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw ConfigError("md.ions: expected 'Label:count', got '" + entry + "'");
        const std::string label = trim(entry.substr(0, colon));
        const std::string count_text = trim(entry.substr(colon + 1));
        std::size_t count = 0;
        try {
            count = std::stoul(count_text);
        } catch (const std::exception&) {
            throw ConfigError("md.ions: bad count '" + count_text + "'");
        }
        if (count == 0) continue;
        sim.ion_counts.emplace_back(
            static_cast<std::uint32_t>(config.species_index(label)), count);
    }
    if (sim.ion_counts.empty()) throw ConfigError("md.ions: no ions requested");
    return sim;
}

}  // namespace icct
