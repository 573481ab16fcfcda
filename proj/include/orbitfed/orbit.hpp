#pragma once

#include <cstddef>
#include <vector>

#include "orbitfed/constants.hpp"
#include "orbitfed/vec3.hpp"

namespace orbitfed {

// Walker-delta constellation: L planes at one inclination, K equally spaced
// satellites per plane. raan_spread is the total right-ascension span across
// planes (pi for the classic delta pattern); phasing_offset is the per-plane
// in-slot shift, 2*pi*F/(L*K) for phasing factor F.
struct ConstellationSpec {
    int num_orbits = 5;
    int sats_per_orbit = 8;
    std::vector<double> altitude;    // m, per orbit
    std::vector<double> inclination; // rad, per orbit
    double raan_spread = 0.0;        // rad, set by make_walker_delta
    double phasing_offset = 0.0;     // rad

    int total_sats() const { return num_orbits * sats_per_orbit; }
    void validate() const;
};

ConstellationSpec make_walker_delta(int num_orbits, int sats_per_orbit,
                                    double altitude_m, double inclination_rad,
                                    int phasing_factor = 1);

struct GroundStation {
    double latitude = 0.0;      // rad
    double longitude = 0.0;     // rad
    double min_elevation = 0.0; // rad

    void validate() const;
};

struct SatelliteId {
    int orbit = 0;
    int slot = 0;

    bool operator==(const SatelliteId&) const = default;
    bool operator<(const SatelliteId& o) const {
        return orbit != o.orbit ? orbit < o.orbit : slot < o.slot;
    }
};

double orbital_period(double altitude_m, const PhysicalConstants& c = {});
double orbital_velocity(double altitude_m, const PhysicalConstants& c = {});

// Earth-centered inertial position of a satellite on its circular orbit.
// At t=0, orbit 0 / slot 0 sits at the ascending node with RAAN 0.
Vec3 satellite_position(const ConstellationSpec& spec, int orbit, int slot,
                        double t, const PhysicalConstants& c = {});

// GS position in the same inertial frame; the station rotates with the Earth
// and at t=0 sits at its configured geographic longitude.
Vec3 ground_station_position(const GroundStation& gs, double t,
                             const PhysicalConstants& c = {});

// Elevation of the satellite above the station's local horizon, rad.
double elevation_angle(const Vec3& sat_pos, const Vec3& gs_pos);

// Closed inequality: elevation exactly at min_elevation counts as visible.
bool elevation_visible(const Vec3& sat_pos, const Vec3& gs_pos,
                       double min_elevation);

// Minimal number of intra-plane ISL hops between two ring slots.
int ring_hop_distance(int slot_a, int slot_b, int ring_size);

} // namespace orbitfed
