#include "orbitfed/windows.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace orbitfed {

namespace {

// Elevation above min_elevation; positive means visible.
double margin_at(const ConstellationSpec& spec, int orbit, int slot,
                 const GroundStation& gs, double t,
                 const PhysicalConstants& c) {
    const Vec3 sat = satellite_position(spec, orbit, slot, t, c);
    const Vec3 gsp = ground_station_position(gs, t, c);
    return elevation_angle(sat, gsp) - gs.min_elevation;
}

template <typename F>
double bisect_crossing(F f, double lo, double hi, double tol) {
    // f(lo) and f(hi) straddle zero.
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if ((f(lo) <= 0.0) == (f(mid) <= 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <typename F>
double ternary_max(F f, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<AccessWindow> compute_access_windows_for(
    const ConstellationSpec& spec, int orbit, int slot, const GroundStation& gs,
    double t0, double t1, const WindowSolverParams& params,
    const PhysicalConstants& c) {
    if (t0 >= t1) throw std::domain_error("horizon must satisfy t0 < t1");

    auto f = [&](double t) { return margin_at(spec, orbit, slot, gs, t, c); };

    // Candidate crossing brackets from the coarse scan, plus refinements of
    // near-miss peaks that could hide a window shorter than the step.
    std::vector<std::pair<double, double>> brackets;
    const double step = params.coarse_step;
    double prev_t = t0;
    double prev_f = f(t0);
    double prev2_f = prev_f;
    for (double t = t0 + step; t < t1 + step; t += step) {
        const double tc = std::min(t, t1);
        const double fc = f(tc);
        if ((prev_f > 0.0) != (fc > 0.0)) {
            brackets.emplace_back(prev_t, tc);
        } else if (prev_f <= 0.0 && fc <= prev_f && prev_f >= prev2_f &&
                   prev_f > -params.graze_margin && prev_t > t0) {
            // Local maximum below threshold: probe for a grazing pass.
            const double peak_t =
                ternary_max(f, prev_t - step, tc, params.tolerance);
            if (f(peak_t) > 0.0) {
                brackets.emplace_back(prev_t - step, peak_t);
                brackets.emplace_back(peak_t, tc);
            }
        }
        prev2_f = prev_f;
        prev_f = fc;
        prev_t = tc;
        if (tc >= t1) break;
    }

    std::vector<double> crossings;
    crossings.reserve(brackets.size());
    for (auto [lo, hi] : brackets) {
        crossings.push_back(bisect_crossing(f, lo, hi, params.tolerance));
    }
    std::sort(crossings.begin(), crossings.end());

    std::vector<AccessWindow> windows;
    bool inside = f(t0) > 0.0;
    double start = t0;
    int visit = 0;
    for (double x : crossings) {
        if (inside) {
            windows.push_back({{orbit, slot}, start, x, ++visit});
        } else {
            start = x;
        }
        inside = !inside;
    }
    if (inside) {
        windows.push_back({{orbit, slot}, start, t1, ++visit});
    }
    return windows;
}

std::vector<AccessWindow> compute_access_windows_serial(
    const ConstellationSpec& spec, const GroundStation& gs, double t0,
    double t1, const WindowSolverParams& params, const PhysicalConstants& c) {
    spec.validate();
    gs.validate();
    std::vector<AccessWindow> table;
    for (int orbit = 0; orbit < spec.num_orbits; ++orbit) {
        for (int slot = 0; slot < spec.sats_per_orbit; ++slot) {
            auto w = compute_access_windows_for(spec, orbit, slot, gs, t0, t1,
                                                params, c);
            table.insert(table.end(), w.begin(), w.end());
        }
    }
    return table;
}

std::vector<AccessWindow> compute_access_windows(
    const ConstellationSpec& spec, const GroundStation& gs, double t0,
    double t1, const WindowSolverParams& params, const PhysicalConstants& c) {
    spec.validate();
    gs.validate();
    const int n = spec.total_sats();
    std::vector<std::vector<AccessWindow>> per_sat(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const int orbit = i / spec.sats_per_orbit;
        const int slot = i % spec.sats_per_orbit;
        per_sat[i] = compute_access_windows_for(spec, orbit, slot, gs, t0, t1,
                                                params, c);
    }
    std::vector<AccessWindow> table;
    for (const auto& w : per_sat) {
        table.insert(table.end(), w.begin(), w.end());
    }
    return table;
}

std::vector<std::vector<std::vector<AccessWindow>>> group_windows(
    const ConstellationSpec& spec, const std::vector<AccessWindow>& table) {
    std::vector<std::vector<std::vector<AccessWindow>>> grouped(
        spec.num_orbits,
        std::vector<std::vector<AccessWindow>>(spec.sats_per_orbit));
    for (const auto& w : table) {
        grouped[w.satellite.orbit][w.satellite.slot].push_back(w);
    }
    for (auto& orbit : grouped) {
        for (auto& slot : orbit) {
            std::sort(slot.begin(), slot.end(),
                      [](const AccessWindow& a, const AccessWindow& b) {
                          return a.t_start < b.t_start;
                      });
        }
    }
    return grouped;
}

void write_windows_csv(std::ostream& out,
                       const std::vector<AccessWindow>& table) {
    out << "orbit,slot,visit_index,t_start_s,t_end_s,duration_s\n";
    char buf[128];
    for (const auto& w : table) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.2f,%.2f,%.2f\n",
                      w.satellite.orbit, w.satellite.slot, w.visit_index,
                      w.t_start, w.t_end, w.duration());
        out << buf;
    }
}

} // namespace orbitfed
