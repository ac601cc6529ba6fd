// Trajectory and snapshot files. Both are CSV with a versioned comment header:
//
//   # icct-trajectory v1
//   t_s,id,species,x_m,y_m,z_m,vx_m_s,vy_m_s,vz_m_s
//
//   # icct-snapshot v1
//   id,species,x_m,y_m,z_m
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "icct/md/sim.hpp"

namespace icct::md {

inline constexpr const char* kTrajectoryHeader = "# icct-trajectory v1";
inline constexpr const char* kSnapshotHeader = "# icct-snapshot v1";

void write_trajectory_header(std::ostream& os);
void append_trajectory_frame(std::ostream& os, const SimState& state);

void write_snapshot(std::ostream& os, const SimState& state);
// Positions only; velocities zeroed and time reset.
SimState read_snapshot(std::istream& is);

struct TrajectoryRow {
    double t_s = 0.0;
    std::size_t id = 0;
    std::uint32_t species = 0;
    double x = 0.0, y = 0.0, z = 0.0;
    double vx = 0.0, vy = 0.0, vz = 0.0;
};

std::vector<TrajectoryRow> read_trajectory(std::istream& is);

}  // namespace icct::md
