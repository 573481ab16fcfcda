#include "orbitfed/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "orbitfed/rng.hpp"
#include "orbitfed/toml.hpp"

namespace orbitfed {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"constellation",
         {"num_orbits", "sats_per_orbit", "altitude_km", "inclination_deg",
          "raan_spread_deg", "phasing_factor"}},
        {"ground_station", {"latitude_deg", "longitude_deg", "min_elevation_deg"}},
        {"link",
         {"tx_power_sat_dbm", "tx_power_gs_dbm", "gain_sat_dbi", "gain_gs_dbi",
          "carrier_freq_hz", "noise_temp_k", "total_bandwidth_hz",
          "num_resource_blocks", "isl_bandwidth_hz", "isl_spectral_efficiency",
          "rate_mode", "fixed_rate_bps", "model_size_bits"}},
        {"training",
         {"local_epochs", "learning_rate", "batch_size", "cycles_per_sample",
          "cpu_freq_hz"}},
        {"data",
         {"source", "num_samples", "feature_dim", "num_classes", "separation",
          "idx_images", "idx_labels", "partition", "test_fraction"}},
        {"sim",
         {"horizon_s", "max_rounds", "target_accuracy", "seed", "aloha_slot_s",
          "aloha_backoff_max", "strict_admission", "parallel_training"}},
        {"solver", {"coarse_step_s", "tolerance_s"}},
    };
    return keys;
}

void reject_unknown(const toml::Document& doc) {
    const auto& known = known_keys();
    for (const auto& [table, kv] : doc.tables) {
        auto it = known.find(table);
        if (it == known.end()) {
            throw std::runtime_error("scenario: unknown table [" + table + "]");
        }
        for (const auto& [key, _] : kv) {
            if (!it->second.count(key)) {
                throw std::runtime_error("scenario: unknown key " + table +
                                         "." + key);
            }
        }
    }
}

template <typename T, typename Get>
void load(T& field, Get&& get) {
    if (auto v = get()) field = static_cast<T>(*v);
}

} // namespace

void Scenario::validate() const {
    if (num_orbits < 1) throw std::domain_error("scenario: num_orbits must be >= 1");
    if (sats_per_orbit < 1) throw std::domain_error("scenario: sats_per_orbit must be >= 1");
    if (altitude_km <= 0) throw std::domain_error("scenario: altitude_km must be positive");
    if (inclination_deg < 0 || inclination_deg > 90) {
        throw std::domain_error("scenario: inclination_deg must lie in [0, 90]");
    }
    if (std::abs(latitude_deg) > 90) {
        throw std::domain_error("scenario: latitude_deg must lie in [-90, 90]");
    }
    if (min_elevation_deg < 0 || min_elevation_deg >= 90) {
        throw std::domain_error("scenario: min_elevation_deg must lie in [0, 90)");
    }
    if (rate_mode != "fixed-rate" && rate_mode != "shannon") {
        throw std::domain_error("scenario: rate_mode must be fixed-rate or shannon");
    }
    if (data_source != "synthetic" && data_source != "idx") {
        throw std::domain_error("scenario: data source must be synthetic or idx");
    }
    if (partition != "iid" && partition != "non-iid") {
        throw std::domain_error("scenario: partition must be iid or non-iid");
    }
    if (model_size_bits <= 0) throw std::domain_error("scenario: model_size_bits must be positive");
    if (horizon_s <= 0) throw std::domain_error("scenario: horizon_s must be positive");
    if (max_rounds < 1) throw std::domain_error("scenario: max_rounds must be >= 1");
    if (test_fraction < 0 || test_fraction >= 1) {
        throw std::domain_error("scenario: test_fraction must lie in [0, 1)");
    }
    if (coarse_step_s <= 0 || tolerance_s <= 0) {
        throw std::domain_error("scenario: solver steps must be positive");
    }
    build_link_budget(*this).validate();
    TrainingConfig tc{local_epochs, learning_rate, batch_size,
                      cycles_per_sample, cpu_freq_hz, 0};
    tc.validate();
}

Scenario scenario_from_toml(const std::string& text) {
    const auto doc = toml::parse(text);
    reject_unknown(doc);

    Scenario sc;
    auto d = [&](const char* t, const char* k) { return doc.get_double(t, k); };
    auto i = [&](const char* t, const char* k) { return doc.get_int(t, k); };
    auto s = [&](const char* t, const char* k) { return doc.get_string(t, k); };
    auto b = [&](const char* t, const char* k) { return doc.get_bool(t, k); };

    load(sc.num_orbits, [&] { return i("constellation", "num_orbits"); });
    load(sc.sats_per_orbit, [&] { return i("constellation", "sats_per_orbit"); });
    load(sc.altitude_km, [&] { return d("constellation", "altitude_km"); });
    load(sc.inclination_deg, [&] { return d("constellation", "inclination_deg"); });
    load(sc.raan_spread_deg, [&] { return d("constellation", "raan_spread_deg"); });
    load(sc.phasing_factor, [&] { return i("constellation", "phasing_factor"); });

    load(sc.latitude_deg, [&] { return d("ground_station", "latitude_deg"); });
    load(sc.longitude_deg, [&] { return d("ground_station", "longitude_deg"); });
    load(sc.min_elevation_deg, [&] { return d("ground_station", "min_elevation_deg"); });

    load(sc.tx_power_sat_dbm, [&] { return d("link", "tx_power_sat_dbm"); });
    load(sc.tx_power_gs_dbm, [&] { return d("link", "tx_power_gs_dbm"); });
    load(sc.gain_sat_dbi, [&] { return d("link", "gain_sat_dbi"); });
    load(sc.gain_gs_dbi, [&] { return d("link", "gain_gs_dbi"); });
    load(sc.carrier_freq_hz, [&] { return d("link", "carrier_freq_hz"); });
    load(sc.noise_temp_k, [&] { return d("link", "noise_temp_k"); });
    load(sc.total_bandwidth_hz, [&] { return d("link", "total_bandwidth_hz"); });
    load(sc.num_resource_blocks, [&] { return i("link", "num_resource_blocks"); });
    load(sc.isl_bandwidth_hz, [&] { return d("link", "isl_bandwidth_hz"); });
    load(sc.isl_spectral_efficiency,
         [&] { return d("link", "isl_spectral_efficiency"); });
    load(sc.rate_mode, [&] { return s("link", "rate_mode"); });
    load(sc.fixed_rate_bps, [&] { return d("link", "fixed_rate_bps"); });
    load(sc.model_size_bits, [&] { return d("link", "model_size_bits"); });

    load(sc.local_epochs, [&] { return i("training", "local_epochs"); });
    load(sc.learning_rate, [&] { return d("training", "learning_rate"); });
    load(sc.batch_size, [&] { return i("training", "batch_size"); });
    load(sc.cycles_per_sample, [&] { return d("training", "cycles_per_sample"); });
    load(sc.cpu_freq_hz, [&] { return d("training", "cpu_freq_hz"); });

    load(sc.data_source, [&] { return s("data", "source"); });
    load(sc.num_samples, [&] { return i("data", "num_samples"); });
    load(sc.feature_dim, [&] { return i("data", "feature_dim"); });
    load(sc.num_classes, [&] { return i("data", "num_classes"); });
    load(sc.separation, [&] { return d("data", "separation"); });
    load(sc.idx_images, [&] { return s("data", "idx_images"); });
    load(sc.idx_labels, [&] { return s("data", "idx_labels"); });
    load(sc.partition, [&] { return s("data", "partition"); });
    load(sc.test_fraction, [&] { return d("data", "test_fraction"); });

    load(sc.horizon_s, [&] { return d("sim", "horizon_s"); });
    load(sc.max_rounds, [&] { return i("sim", "max_rounds"); });
    load(sc.target_accuracy, [&] { return d("sim", "target_accuracy"); });
    load(sc.seed, [&] { return i("sim", "seed"); });
    load(sc.aloha_slot_s, [&] { return d("sim", "aloha_slot_s"); });
    load(sc.aloha_backoff_max, [&] { return i("sim", "aloha_backoff_max"); });
    load(sc.strict_admission, [&] { return b("sim", "strict_admission"); });
    load(sc.parallel_training, [&] { return b("sim", "parallel_training"); });

    load(sc.coarse_step_s, [&] { return d("solver", "coarse_step_s"); });
    load(sc.tolerance_s, [&] { return d("solver", "tolerance_s"); });

    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_toml(ss.str());
}

void save_scenario(std::ostream& out, const Scenario& sc) {
    out.precision(17);
    out << "[constellation]\n"
        << "num_orbits = " << sc.num_orbits << "\n"
        << "sats_per_orbit = " << sc.sats_per_orbit << "\n"
        << "altitude_km = " << sc.altitude_km << "\n"
        << "inclination_deg = " << sc.inclination_deg << "\n"
        << "raan_spread_deg = " << sc.raan_spread_deg << "\n"
        << "phasing_factor = " << sc.phasing_factor << "\n\n"
        << "[ground_station]\n"
        << "latitude_deg = " << sc.latitude_deg << "\n"
        << "longitude_deg = " << sc.longitude_deg << "\n"
        << "min_elevation_deg = " << sc.min_elevation_deg << "\n\n"
        << "[link]\n"
        << "tx_power_sat_dbm = " << sc.tx_power_sat_dbm << "\n"
        << "tx_power_gs_dbm = " << sc.tx_power_gs_dbm << "\n"
        << "gain_sat_dbi = " << sc.gain_sat_dbi << "\n"
        << "gain_gs_dbi = " << sc.gain_gs_dbi << "\n"
        << "carrier_freq_hz = " << sc.carrier_freq_hz << "\n"
        << "noise_temp_k = " << sc.noise_temp_k << "\n"
        << "total_bandwidth_hz = " << sc.total_bandwidth_hz << "\n"
        << "num_resource_blocks = " << sc.num_resource_blocks << "\n"
        << "isl_bandwidth_hz = " << sc.isl_bandwidth_hz << "\n"
        << "isl_spectral_efficiency = " << sc.isl_spectral_efficiency << "\n"
        << "rate_mode = \"" << sc.rate_mode << "\"\n"
        << "fixed_rate_bps = " << sc.fixed_rate_bps << "\n"
        << "model_size_bits = " << sc.model_size_bits << "\n\n"
        << "[training]\n"
        << "local_epochs = " << sc.local_epochs << "\n"
        << "learning_rate = " << sc.learning_rate << "\n"
        << "batch_size = " << sc.batch_size << "\n"
        << "cycles_per_sample = " << sc.cycles_per_sample << "\n"
        << "cpu_freq_hz = " << sc.cpu_freq_hz << "\n\n"
        << "[data]\n"
        << "source = \"" << sc.data_source << "\"\n"
        << "num_samples = " << sc.num_samples << "\n"
        << "feature_dim = " << sc.feature_dim << "\n"
        << "num_classes = " << sc.num_classes << "\n"
        << "separation = " << sc.separation << "\n"
        << "idx_images = \"" << sc.idx_images << "\"\n"
        << "idx_labels = \"" << sc.idx_labels << "\"\n"
        << "partition = \"" << sc.partition << "\"\n"
        << "test_fraction = " << sc.test_fraction << "\n\n"
        << "[sim]\n"
        << "horizon_s = " << sc.horizon_s << "\n"
        << "max_rounds = " << sc.max_rounds << "\n"
        << "target_accuracy = " << sc.target_accuracy << "\n"
        << "seed = " << sc.seed << "\n"
        << "aloha_slot_s = " << sc.aloha_slot_s << "\n"
        << "aloha_backoff_max = " << sc.aloha_backoff_max << "\n"
        << "strict_admission = " << (sc.strict_admission ? "true" : "false") << "\n"
        << "parallel_training = " << (sc.parallel_training ? "true" : "false")
        << "\n\n"
        << "[solver]\n"
        << "coarse_step_s = " << sc.coarse_step_s << "\n"
        << "tolerance_s = " << sc.tolerance_s << "\n";
}

ConstellationSpec build_constellation(const Scenario& sc) {
    ConstellationSpec spec = make_walker_delta(
        sc.num_orbits, sc.sats_per_orbit, sc.altitude_km * 1000.0,
        sc.inclination_deg * kDegToRad, sc.phasing_factor);
    spec.raan_spread = sc.raan_spread_deg * kDegToRad;
    return spec;
}

GroundStation build_ground_station(const Scenario& sc) {
    GroundStation gs;
    gs.latitude = sc.latitude_deg * kDegToRad;
    gs.longitude = sc.longitude_deg * kDegToRad;
    gs.min_elevation = sc.min_elevation_deg * kDegToRad;
    gs.validate();
    return gs;
}

LinkBudget build_link_budget(const Scenario& sc) {
    LinkBudget b;
    b.tx_power_sat_dbm = sc.tx_power_sat_dbm;
    b.tx_power_gs_dbm = sc.tx_power_gs_dbm;
    b.gain_sat_dbi = sc.gain_sat_dbi;
    b.gain_gs_dbi = sc.gain_gs_dbi;
    b.carrier_freq = sc.carrier_freq_hz;
    b.noise_temp = sc.noise_temp_k;
    b.total_bandwidth = sc.total_bandwidth_hz;
    b.num_resource_blocks =
        sc.num_resource_blocks > 0 ? sc.num_resource_blocks : sc.num_orbits;
    b.isl_bandwidth = sc.isl_bandwidth_hz;
    b.isl_spectral_efficiency = sc.isl_spectral_efficiency;
    if (sc.rate_mode == "fixed-rate") {
        b.fixed_rate_override = sc.fixed_rate_bps;
    } else {
        b.fixed_rate_override.reset();
    }
    b.validate();
    return b;
}

SimScenario build_sim(const Scenario& sc) {
    sc.validate();
    SimScenario sim;
    sim.constellation = build_constellation(sc);
    sim.ground_station = build_ground_station(sc);
    sim.budget = build_link_budget(sc);
    sim.payload = PayloadSpec{sc.model_size_bits, 1.0};
    sim.training = TrainingConfig{sc.local_epochs, sc.learning_rate,
                                  sc.batch_size, sc.cycles_per_sample,
                                  sc.cpu_freq_hz, 0};
    sim.solver = WindowSolverParams{sc.coarse_step_s, sc.tolerance_s};
    sim.horizon = sc.horizon_s;
    sim.max_rounds = sc.max_rounds;
    sim.target_accuracy = sc.target_accuracy;
    sim.seed = sc.seed;
    sim.aloha_slot = sc.aloha_slot_s;
    sim.aloha_backoff_max = sc.aloha_backoff_max;
    sim.strict_admission = sc.strict_admission;
    sim.parallel_training = sc.parallel_training;

    Dataset corpus;
    if (sc.data_source == "synthetic") {
        SyntheticDataParams params;
        params.num_samples = static_cast<size_t>(sc.num_samples);
        params.feature_dim = static_cast<size_t>(sc.feature_dim);
        params.num_classes = sc.num_classes;
        params.separation = sc.separation;
        corpus = make_synthetic_dataset(
            params, derive_seed(sc.seed, seed_stream::dataset));
    } else {
        corpus = load_idx_dataset(sc.idx_images, sc.idx_labels, sc.num_classes);
    }

    auto [train, test] = split_test(
        corpus, sc.test_fraction, derive_seed(sc.seed, seed_stream::test_split));
    sim.test_set = std::move(test);
    sim.shards = partition_data(
        train, sim.constellation,
        sc.partition == "iid" ? PartitionMode::iid : PartitionMode::non_iid,
        derive_seed(sc.seed, seed_stream::partition));
    return sim;
}

} // namespace orbitfed
