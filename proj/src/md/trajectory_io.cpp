#include "icct/md/trajectory_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "icct/errors.hpp"

namespace icct::md {

namespace {

void write_double(std::ostream& os, double v) {
    // round-trip precision
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

void write_trajectory_header(std::ostream& os) {
    os << kTrajectoryHeader << "\n";
    os << "t_s,id,species,x_m,y_m,z_m,vx_m_s,vy_m_s,vz_m_s\n";
}

void append_trajectory_frame(std::ostream& os, const SimState& state) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        write_double(os, state.time_s);
        os << ',' << i << ',' << state.species[i] << ',';
        write_double(os, state.x[i]);
        os << ',';
        write_double(os, state.y[i]);
        os << ',';
        write_double(os, state.z[i]);
        os << ',';
        write_double(os, state.vx[i]);
        os << ',';
        write_double(os, state.vy[i]);
        os << ',';
        write_double(os, state.vz[i]);
        os << '\n';
    }
}

void write_snapshot(std::ostream& os, const SimState& state) {
    os << kSnapshotHeader << "\n";
    os << "id,species,x_m,y_m,z_m\n";
    for (std::size_t i = 0; i < state.size(); ++i) {
        os << i << ',' << state.species[i] << ',';
        write_double(os, state.x[i]);
        os << ',';
        write_double(os, state.y[i]);
        os << ',';
        write_double(os, state.z[i]);
        os << '\n';
    }
}

SimState read_snapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSnapshotHeader)
        throw ConfigError("snapshot: missing version header");
    if (!std::getline(is, line) || line != "id,species,x_m,y_m,z_m")
        throw ConfigError("snapshot: missing column header");
    SimState state;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 5) throw ConfigError("snapshot: bad row '" + line + "'");
        state.species.push_back(static_cast<std::uint32_t>(std::stoul(fields[1])));
        state.x.push_back(std::stod(fields[2]));
        state.y.push_back(std::stod(fields[3]));
        state.z.push_back(std::stod(fields[4]));
    }
    state.vx.assign(state.x.size(), 0.0);
    state.vy.assign(state.x.size(), 0.0);
    state.vz.assign(state.x.size(), 0.0);
    return state;
}

std::vector<TrajectoryRow> read_trajectory(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kTrajectoryHeader)
        throw ConfigError("trajectory: missing version header");
    if (!std::getline(is, line) ||
        line != "t_s,id,species,x_m,y_m,z_m,vx_m_s,vy_m_s,vz_m_s")
        throw ConfigError("trajectory: missing column header");
    std::vector<TrajectoryRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 9) throw ConfigError("trajectory: bad row '" + line + "'");
        TrajectoryRow row;
        row.t_s = std::stod(fields[0]);
        row.id = std::stoul(fields[1]);
        row.species = static_cast<std::uint32_t>(std::stoul(fields[2]));
        row.x = std::stod(fields[3]);
        row.y = std::stod(fields[4]);
        row.z = std::stod(fields[5]);
        row.vx = std::stod(fields[6]);
        row.vy = std::stod(fields[7]);
        row.vz = std::stod(fields[8]);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace icct::md
