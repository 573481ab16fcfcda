#pragma once

#include <iosfwd>
#include <vector>

#include "orbitfed/orbit.hpp"

namespace orbitfed {

struct AccessWindow {
    SatelliteId satellite;
    double t_start = 0.0; // s since epoch
    double t_end = 0.0;
    int visit_index = 0;  // r, 1-based in time order per satellite

    double duration() const { return t_end - t_start; }
};

struct WindowSolverParams {
    double coarse_step = 10.0;   // s
    double tolerance = 0.01;     // s, bisection stop
    // Coarse samples peaking within this margin below min_elevation get a
    // ternary-search refinement so grazing passes are not skipped.
    double graze_margin = 0.05;  // rad
};

// All maximal visibility intervals of one satellite over [t0, t1].
std::vector<AccessWindow> compute_access_windows_for(
    const ConstellationSpec& spec, int orbit, int slot, const GroundStation& gs,
    double t0, double t1, const WindowSolverParams& params = {},
    const PhysicalConstants& c = {});

// Whole-constellation window table, merged in (orbit, slot) order.
std::vector<AccessWindow> compute_access_windows_serial(
    const ConstellationSpec& spec, const GroundStation& gs, double t0,
    double t1, const WindowSolverParams& params = {},
    const PhysicalConstants& c = {});

// OpenMP over satellites; results identical to the serial version.
std::vector<AccessWindow> compute_access_windows(
    const ConstellationSpec& spec, const GroundStation& gs, double t0,
    double t1, const WindowSolverParams& params = {},
    const PhysicalConstants& c = {});

// Per-satellite view of a merged table, indexed [orbit][slot].
std::vector<std::vector<std::vector<AccessWindow>>> group_windows(
    const ConstellationSpec& spec, const std::vector<AccessWindow>& table);

// CSV: orbit,slot,visit_index,t_start_s,t_end_s,duration_s (2 decimals).
void write_windows_csv(std::ostream& out,
                       const std::vector<AccessWindow>& table);

} // namespace orbitfed
