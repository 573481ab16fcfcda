#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "orbitfed/scenario.hpp"

#ifndef ORBITFED_SCENARIO_DIR
#define ORBITFED_SCENARIO_DIR "scenarios"
#endif

using namespace orbitfed;

TEST_CASE("empty config yields the built-in defaults") {
    const Scenario sc = scenario_from_toml("");
    CHECK(sc.num_orbits == 5);
    CHECK(sc.sats_per_orbit == 8);
    CHECK(sc.altitude_km == 1500.0);
    CHECK(sc.inclination_deg == 80.0);
    CHECK(sc.latitude_deg == doctest::Approx(37.9514));
    CHECK(sc.longitude_deg == doctest::Approx(-91.7713));
    CHECK(sc.min_elevation_deg == 10.0);
    CHECK(sc.carrier_freq_hz == 2.4e9);
    CHECK(sc.noise_temp_k == doctest::Approx(354.81));
    CHECK(sc.rate_mode == "fixed-rate");
    CHECK(sc.fixed_rate_bps == 16e6);
    CHECK(sc.model_size_bits == 8e6);
    CHECK(sc.local_epochs == 100);
    CHECK(sc.learning_rate == 0.001);
    CHECK(sc.batch_size == 32);
    CHECK(sc.partition == "non-iid");
    CHECK(sc.horizon_s == 3 * 86400.0);
}

TEST_CASE("bundled scenario files load and validate") {
    const Scenario base =
        load_scenario(std::string(ORBITFED_SCENARIO_DIR) + "/paper_default.toml");
    CHECK(base.num_orbits == 5);
    CHECK(base.sats_per_orbit == 8);

    const Scenario fig3 =
        load_scenario(std::string(ORBITFED_SCENARIO_DIR) + "/fig3.toml");
    CHECK(fig3.num_orbits == 4);
    CHECK(fig3.sats_per_orbit == 4);
    CHECK(fig3.horizon_s == doctest::Approx(64800.0));
}

TEST_CASE("overrides apply and units convert") {
    const Scenario sc = scenario_from_toml(
        "[constellation]\n"
        "num_orbits = 3\n"
        "altitude_km = 550.0\n"
        "[link]\n"
        "rate_mode = \"shannon\"\n"
        "[sim]\n"
        "seed = 42\n");
    CHECK(sc.num_orbits == 3);
    CHECK(sc.sats_per_orbit == 8); // untouched default
    CHECK(sc.seed == 42);

    const auto spec = build_constellation(sc);
    CHECK(spec.num_orbits == 3);
    CHECK(spec.altitude[0] == doctest::Approx(550e3));
    // Degrees arrive as radians downstream.
    CHECK(spec.inclination[0] == doctest::Approx(80.0 * 3.14159265358979 / 180.0)
                                     .epsilon(1e-6));

    const auto budget = build_link_budget(sc);
    CHECK_FALSE(budget.fixed_rate_override.has_value());
    CHECK(budget.num_resource_blocks == 3); // one block per orbit by default
}

TEST_CASE("invalid configurations are rejected by name") {
    CHECK_THROWS_WITH_AS(
        scenario_from_toml("[constellation]\nsats_per_orbit = 0\n"),
        doctest::Contains("sats_per_orbit"), std::domain_error);
    CHECK_THROWS_WITH_AS(
        scenario_from_toml("[constellation]\ninclination_deg = 91.0\n"),
        doctest::Contains("inclination_deg"), std::domain_error);
    CHECK_THROWS_WITH_AS(
        scenario_from_toml("[sim]\nmax_rounds = 0\n"),
        doctest::Contains("max_rounds"), std::domain_error);
    CHECK_THROWS_WITH_AS(
        scenario_from_toml("[link]\nrate_mode = \"adaptive\"\n"),
        doctest::Contains("rate_mode"), std::domain_error);
}

TEST_CASE("unknown keys and tables are rejected") {
    CHECK_THROWS_WITH_AS(
        scenario_from_toml("[constellation]\nnum_orbitz = 5\n"),
        doctest::Contains("num_orbitz"), std::runtime_error);
    CHECK_THROWS_WITH_AS(scenario_from_toml("[weather]\nrain = true\n"),
                         doctest::Contains("weather"), std::runtime_error);
}

TEST_CASE("save/load round trip is the identity") {
    Scenario sc;
    sc.num_orbits = 7;
    sc.altitude_km = 612.5;
    sc.learning_rate = 0.0042;
    sc.rate_mode = "shannon";
    sc.strict_admission = true;
    sc.seed = 987654321;

    std::ostringstream out;
    save_scenario(out, sc);
    const Scenario back = scenario_from_toml(out.str());

    CHECK(back.num_orbits == sc.num_orbits);
    CHECK(back.altitude_km == sc.altitude_km);
    CHECK(back.learning_rate == sc.learning_rate);
    CHECK(back.rate_mode == sc.rate_mode);
    CHECK(back.strict_admission == sc.strict_admission);
    CHECK(back.seed == sc.seed);
    // Full fixed point: serializing again gives the same bytes.
    std::ostringstream again;
    save_scenario(again, back);
    CHECK(again.str() == out.str());
}

TEST_CASE("build_sim produces a consistent simulation input") {
    Scenario sc;
    sc.num_orbits = 2;
    sc.sats_per_orbit = 4;
    sc.num_samples = 400;
    sc.feature_dim = 8;
    sc.num_classes = 4;
    sc.partition = "iid";
    const SimScenario sim = build_sim(sc);

    CHECK(sim.shards.size() == 8);
    size_t total = 0;
    for (const auto& sh : sim.shards) {
        CHECK(sh.data.feature_dim == 8);
        total += sh.size();
    }
    CHECK(total + sim.test_set.size() == 400);
    CHECK(sim.payload.sample_bits == sc.model_size_bits);
    CHECK(sim.budget.fixed_rate_override.has_value());

    // Same seed, same shards; different seed, different partition.
    const SimScenario sim2 = build_sim(sc);
    CHECK(sim2.shards[0].data.labels == sim.shards[0].data.labels);
    sc.seed += 1;
    const SimScenario sim3 = build_sim(sc);
    bool any_diff = false;
    for (size_t i = 0; i < sim.shards.size() && !any_diff; ++i) {
        if (sim3.shards[i].data.labels != sim.shards[i].data.labels) {
            any_diff = true;
        }
    }
    CHECK(any_diff);
}
