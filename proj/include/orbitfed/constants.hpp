#pragma once

namespace orbitfed {

// WGS-84-ish spherical Earth, SI units throughout.
struct PhysicalConstants {
    double mu = 3.986004418e14;        // G*M_earth, m^3/s^2
    double earth_radius = 6371000.0;   // m
    double earth_rotation_rate = 7.2921159e-5; // rad/s
    double light_speed = 299792458.0;  // m/s
    double boltzmann = 1.380649e-23;   // J/K

    void validate() const;
};

} // namespace orbitfed
