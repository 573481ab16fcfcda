#pragma once

#include <iosfwd>
#include <string>

#include "orbitfed/sim.hpp"

namespace orbitfed {

// Everything a run needs, in config-file units. Missing keys fall back to
// the defaults below (the paper_default setup); unknown keys are rejected.
struct Scenario {
    // [constellation]
    int num_orbits = 5;
    int sats_per_orbit = 8;
    double altitude_km = 1500.0;
    double inclination_deg = 80.0;
    double raan_spread_deg = 180.0;
    int phasing_factor = 1;

    // [ground_station] Rolla, MO
    double latitude_deg = 37.9514;
    double longitude_deg = -91.7713;
    double min_elevation_deg = 10.0;

    // [link]
    double tx_power_sat_dbm = 40.0;
    double tx_power_gs_dbm = 40.0;
    double gain_sat_dbi = 6.98;
    double gain_gs_dbi = 6.98;
    double carrier_freq_hz = 2.4e9;
    double noise_temp_k = 354.81;
    double total_bandwidth_hz = 1.0e6; // assumed; the source gives no B
    int num_resource_blocks = -1;      // -1: one RB per orbit
    double isl_bandwidth_hz = 16.0e6;  // assumed so ISL rate = RF rate
    double isl_spectral_efficiency = 1.0;
    std::string rate_mode = "fixed-rate"; // or "shannon"
    double fixed_rate_bps = 16.0e6;
    double model_size_bits = 8.0e6;

    // [training]
    int local_epochs = 100;
    double learning_rate = 0.001;
    int batch_size = 32;
    double cycles_per_sample = 1.0e3;
    double cpu_freq_hz = 1.0e9;

    // [data]
    std::string data_source = "synthetic"; // or "idx"
    int num_samples = 4000;
    int feature_dim = 20;
    int num_classes = 10;
    double separation = 1.0;
    std::string idx_images;
    std::string idx_labels;
    std::string partition = "non-iid"; // or "iid"
    double test_fraction = 0.1;

    // [sim]
    double horizon_s = 3 * 86400.0;
    int max_rounds = 100;
    double target_accuracy = 1.0;
    uint64_t seed = 1;
    double aloha_slot_s = 1.0;
    int aloha_backoff_max = 8;
    bool strict_admission = false;
    bool parallel_training = true;

    // [solver]
    double coarse_step_s = 10.0;
    double tolerance_s = 0.01;

    void validate() const;
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_toml(const std::string& text);
void save_scenario(std::ostream& out, const Scenario& sc);

// Resolve the config into simulation-ready components: constellation,
// dataset, partition, held-out split.
SimScenario build_sim(const Scenario& sc);

// Constellation/GS-only resolution, for window queries.
ConstellationSpec build_constellation(const Scenario& sc);
GroundStation build_ground_station(const Scenario& sc);
LinkBudget build_link_budget(const Scenario& sc);

} // namespace orbitfed
