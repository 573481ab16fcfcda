#include "orbitfed/orbit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbitfed {

void PhysicalConstants::validate() const {
    if (mu <= 0 || earth_radius <= 0 || earth_rotation_rate <= 0 ||
        light_speed <= 0 || boltzmann <= 0) {
        throw std::domain_error("physical constants must be strictly positive");
    }
}

void ConstellationSpec::validate() const {
    if (num_orbits < 1) throw std::domain_error("num_orbits must be >= 1");
    if (sats_per_orbit < 1) throw std::domain_error("sats_per_orbit must be >= 1");
    if (altitude.size() != static_cast<size_t>(num_orbits) ||
        inclination.size() != static_cast<size_t>(num_orbits)) {
        throw std::domain_error("per-orbit altitude/inclination size mismatch");
    }
    for (double h : altitude) {
        if (h <= 0) throw std::domain_error("altitude must be positive");
    }
    for (double a : inclination) {
        if (a < 0 || a > std::numbers::pi / 2) {
            throw std::domain_error("inclination must lie in [0, pi/2]");
        }
    }
}

ConstellationSpec make_walker_delta(int num_orbits, int sats_per_orbit,
                                    double altitude_m, double inclination_rad,
                                    int phasing_factor) {
    ConstellationSpec spec;
    spec.num_orbits = num_orbits;
    spec.sats_per_orbit = sats_per_orbit;
    spec.altitude.assign(num_orbits, altitude_m);
    spec.inclination.assign(num_orbits, inclination_rad);
    spec.raan_spread = std::numbers::pi;
    spec.phasing_offset = 2.0 * std::numbers::pi * phasing_factor /
                          (static_cast<double>(num_orbits) * sats_per_orbit);
    spec.validate();
    return spec;
}

void GroundStation::validate() const {
    if (std::abs(latitude) > std::numbers::pi / 2) {
        throw std::domain_error("latitude must lie in [-pi/2, pi/2]");
    }
    if (min_elevation < 0 || min_elevation >= std::numbers::pi / 2) {
        throw std::domain_error("min_elevation must lie in [0, pi/2)");
    }
}

double orbital_period(double altitude_m, const PhysicalConstants& c) {
    if (altitude_m <= 0) throw std::domain_error("altitude must be positive");
    const double a = c.earth_radius + altitude_m;
    return 2.0 * std::numbers::pi * std::sqrt(a * a * a / c.mu);
}

double orbital_velocity(double altitude_m, const PhysicalConstants& c) {
    if (altitude_m <= 0) throw std::domain_error("altitude must be positive");
    return std::sqrt(c.mu / (c.earth_radius + altitude_m));
}

Vec3 satellite_position(const ConstellationSpec& spec, int orbit, int slot,
                        double t, const PhysicalConstants& c) {
    if (orbit < 0 || orbit >= spec.num_orbits)
        throw std::out_of_range("orbit index out of range");
    if (slot < 0 || slot >= spec.sats_per_orbit)
        throw std::out_of_range("slot index out of range");

    const double h = spec.altitude[orbit];
    const double r = c.earth_radius + h;
    const double period = orbital_period(h, c);
    const double raan =
        spec.num_orbits > 1
            ? spec.raan_spread * orbit / static_cast<double>(spec.num_orbits)
            : 0.0;

    // Argument of latitude: in-plane phase from the ascending node.
    const double u = 2.0 * std::numbers::pi * t / period +
                     2.0 * std::numbers::pi * slot / spec.sats_per_orbit +
                     spec.phasing_offset * orbit;

    const double incl = spec.inclination[orbit];
    const double cu = std::cos(u), su = std::sin(u);
    const double co = std::cos(raan), so = std::sin(raan);
    const double ci = std::cos(incl), si = std::sin(incl);
    return {r * (co * cu - so * su * ci),
            r * (so * cu + co * su * ci),
            r * (su * si)};
}

Vec3 ground_station_position(const GroundStation& gs, double t,
                             const PhysicalConstants& c) {
    const double lon = gs.longitude + c.earth_rotation_rate * t;
    const double cl = std::cos(gs.latitude);
    return {c.earth_radius * cl * std::cos(lon),
            c.earth_radius * cl * std::sin(lon),
            c.earth_radius * std::sin(gs.latitude)};
}

double elevation_angle(const Vec3& sat_pos, const Vec3& gs_pos) {
    const Vec3 los = sat_pos - gs_pos;
    const double gs_norm = gs_pos.norm();
    const double los_norm = los.norm();
    if (gs_norm <= 0.0) throw std::domain_error("ground station at Earth center");
    if (los_norm <= 0.0) throw std::domain_error("satellite coincides with ground station");
    double cos_zen = gs_pos.dot(los) / (gs_norm * los_norm);
    cos_zen = std::clamp(cos_zen, -1.0, 1.0);
    return std::numbers::pi / 2 - std::acos(cos_zen);
}

bool elevation_visible(const Vec3& sat_pos, const Vec3& gs_pos,
                       double min_elevation) {
    return elevation_angle(sat_pos, gs_pos) >= min_elevation;
}

int ring_hop_distance(int slot_a, int slot_b, int ring_size) {
    if (ring_size < 1) throw std::domain_error("ring size must be >= 1");
    if (slot_a < 0 || slot_a >= ring_size || slot_b < 0 || slot_b >= ring_size)
        throw std::out_of_range("ring slot out of range");
    const int d = std::abs(slot_a - slot_b);
    return std::min(d, ring_size - d);
}

} // namespace orbitfed
