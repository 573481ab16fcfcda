#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orbitfed/orbit.hpp"

using namespace orbitfed;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("orbital period matches Kepler's third law") {
    // Independent closed-form evaluation with the stated constants.
    const double mu = 3.986004418e14;
    const double a = 6371000.0 + 1500000.0;
    const double expected = 2.0 * kPi * std::sqrt(a * a * a / mu);
    CHECK(orbital_period(1500000.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(orbital_period(1500000.0) == doctest::Approx(6949.0).epsilon(2e-4));

    // Geostationary sanity: close to a sidereal day.
    CHECK(orbital_period(35786000.0) == doctest::Approx(86164.0).epsilon(1e-3));

    // Monotone in altitude.
    CHECK(orbital_period(600000.0) > orbital_period(500000.0));
    CHECK_THROWS_AS(orbital_period(0.0), std::domain_error);
    CHECK_THROWS_AS(orbital_period(-1.0), std::domain_error);
}

TEST_CASE("orbital velocity and v*T identity") {
    CHECK(orbital_velocity(1500000.0) == doctest::Approx(7116.0).epsilon(1e-4));
    // Low LEO is about 7.8 km/s.
    CHECK(orbital_velocity(300000.0) == doctest::Approx(7800.0).epsilon(0.02));

    for (double h : {400e3, 1500e3, 35786e3}) {
        const double circumference = 2.0 * kPi * (6371000.0 + h);
        CHECK(orbital_velocity(h) * orbital_period(h) ==
              doctest::Approx(circumference).epsilon(1e-9));
    }
    CHECK_THROWS_AS(orbital_velocity(0.0), std::domain_error);
}

TEST_CASE("satellite position geometry") {
    auto spec = make_walker_delta(1, 8, 1500e3, 0.0);
    const double r = 6371000.0 + 1500e3;

    SUBCASE("epoch reference point on the equatorial circle") {
        const Vec3 p = satellite_position(spec, 0, 0, 0.0);
        CHECK(p.x == doctest::Approx(r));
        CHECK(p.y == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(p.z == doctest::Approx(0.0).epsilon(1e-9));
    }

    SUBCASE("norm preservation and periodicity") {
        const double period = orbital_period(1500e3);
        for (double t : {0.0, 123.4, 5000.0, 86400.0}) {
            CHECK(satellite_position(spec, 0, 3, t).norm() ==
                  doctest::Approx(r).epsilon(1e-12));
        }
        const Vec3 a = satellite_position(spec, 0, 2, 0.0);
        const Vec3 b = satellite_position(spec, 0, 2, period);
        CHECK(distance(a, b) < 1e-6);
    }

    SUBCASE("antipodal slots on an even ring") {
        const Vec3 a = satellite_position(spec, 0, 0, 100.0);
        const Vec3 b = satellite_position(spec, 0, 4, 100.0);
        CHECK(a.dot(b) == doctest::Approx(-r * r).epsilon(1e-12));
    }

    SUBCASE("equal spacing of adjacent slots") {
        auto inclined = make_walker_delta(3, 8, 1500e3, 1.2);
        for (int slot = 0; slot < 8; ++slot) {
            const Vec3 a = satellite_position(inclined, 1, slot, 777.0);
            const Vec3 b = satellite_position(inclined, 1, (slot + 1) % 8, 777.0);
            const double angle = std::acos(a.dot(b) / (a.norm() * b.norm()));
            CHECK(angle == doctest::Approx(2.0 * kPi / 8).epsilon(1e-9));
        }
    }

    CHECK_THROWS_AS(satellite_position(spec, 1, 0, 0.0), std::out_of_range);
    CHECK_THROWS_AS(satellite_position(spec, 0, 8, 0.0), std::out_of_range);
}

TEST_CASE("ground station position") {
    GroundStation gs;

    SUBCASE("equatorial reference point") {
        const Vec3 p = ground_station_position(gs, 0.0);
        CHECK(p.x == doctest::Approx(6371000.0));
        CHECK(p.y == doctest::Approx(0.0).epsilon(1e-9));
    }

    SUBCASE("one sidereal rotation returns to start") {
        gs.latitude = 0.7;
        gs.longitude = -1.3;
        const double day = 2.0 * kPi / 7.2921159e-5;
        CHECK(distance(ground_station_position(gs, 0.0),
                       ground_station_position(gs, day)) < 1e-6);
        for (double t : {0.0, 3600.0, 90000.0}) {
            CHECK(ground_station_position(gs, t).norm() ==
                  doctest::Approx(6371000.0).epsilon(1e-12));
        }
    }

    SUBCASE("pole is stationary") {
        gs.latitude = kPi / 2;
        CHECK(distance(ground_station_position(gs, 0.0),
                       ground_station_position(gs, 12345.6)) < 1e-6);
    }
}

TEST_CASE("elevation visibility condition") {
    const Vec3 g{6371000.0, 0.0, 0.0};

    SUBCASE("overhead always visible") {
        const Vec3 s = g * 1.3;
        CHECK(elevation_visible(s, g, 0.0));
        CHECK(elevation_visible(s, g, 1.5));
        CHECK(elevation_angle(s, g) == doctest::Approx(kPi / 2));
    }

    SUBCASE("antipodal never visible") {
        const Vec3 s = g * -1.3;
        CHECK_FALSE(elevation_visible(s, g, 0.0));
    }

    SUBCASE("boundary inequality is closed") {
        // Satellite on the local horizon plane: elevation exactly zero.
        const Vec3 s{6371000.0, 2000000.0, 0.0};
        CHECK(elevation_angle(s, g) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(elevation_visible(s, g, 0.0));
    }

    CHECK_THROWS_AS(elevation_visible(g, g, 0.1), std::domain_error);
}

TEST_CASE("ring hop distance") {
    CHECK(ring_hop_distance(0, 4, 8) == 4);
    CHECK(ring_hop_distance(0, 0, 5) == 0);
    CHECK(ring_hop_distance(1, 7, 8) == 2);
    CHECK(ring_hop_distance(0, 2, 3) == 1);
    // Maximum possible value is floor(K/2).
    for (int K : {1, 2, 5, 8, 9}) {
        int max_d = 0;
        for (int a = 0; a < K; ++a) {
            for (int b = 0; b < K; ++b) {
                max_d = std::max(max_d, ring_hop_distance(a, b, K));
            }
        }
        CHECK(max_d == K / 2);
    }
    CHECK_THROWS_AS(ring_hop_distance(0, 3, 3), std::out_of_range);
}

TEST_CASE("constellation and ground station validation") {
    CHECK_THROWS_AS(make_walker_delta(0, 4, 1500e3, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_walker_delta(4, 0, 1500e3, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_walker_delta(4, 4, -5.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_walker_delta(4, 4, 1500e3, 2.0), std::domain_error);

    GroundStation gs;
    gs.min_elevation = kPi / 2;
    CHECK_THROWS_AS(gs.validate(), std::domain_error);
}
