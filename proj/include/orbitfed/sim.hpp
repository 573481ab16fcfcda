#pragma once

#include <string>
#include <vector>

#include "orbitfed/data.hpp"
#include "orbitfed/fl.hpp"
#include "orbitfed/link.hpp"
#include "orbitfed/scheduler.hpp"
#include "orbitfed/windows.hpp"

namespace orbitfed {

struct Event {
    double time = 0.0;
    std::string kind;    // broadcast-start, model-received, train-complete, ...
    std::string subject; // "sat l.k" or "gs"
    int round = 0;
};

struct OrbitRoundStats {
    int orbit = 0;
    int sink_slot = -1;
    double t_broadcast_start = 0.0;
    double t_uplink = 0.0;
    double t_downlink = 0.0;
    double t_train_max = 0.0;
    double t_relay = 0.0;
    double t_wait_sink = 0.0;
    double completion = 0.0;   // absolute time the partial reaches the GS
    double round_time = 0.0;   // completion - round_start (T*_sum realized)
    double star_tsum = 0.0;    // sequential star-exchange time, same start
};

struct RoundRecord {
    int round = 0;
    double round_start = 0.0;
    double wall_time = 0.0;
    double accuracy = 0.0;
    double loss = 0.0;
    bool partial = false;
    std::vector<OrbitRoundStats> orbits;
};

struct RunResult {
    std::vector<RoundRecord> rounds;
    std::vector<Event> events;
    ModelState final_model;
    double finish_time = 0.0;
    bool reached_target = false;
    std::vector<std::string> diagnostics;
};

// Fully resolved simulation inputs (built from a Scenario by the CLI layer).
struct SimScenario {
    ConstellationSpec constellation;
    GroundStation ground_station;
    PhysicalConstants constants;
    LinkBudget budget;
    PayloadSpec payload;
    TrainingConfig training;
    WindowSolverParams solver;
    std::vector<DataShard> shards; // one per satellite, orbit-major
    Dataset test_set;
    double horizon = 3 * 86400.0;
    int max_rounds = 100;
    double target_accuracy = 1.0;
    uint64_t seed = 0;
    double aloha_slot = 1.0;
    int aloha_backoff_max = 8;
    bool strict_admission = false;
    bool parallel_training = true;
};

// Worst-case slant range at the visibility-cone edge, used for admission
// estimates before the actual contact geometry is known.
double max_slant_range(double altitude_m, double min_elevation,
                       const PhysicalConstants& c = {});

// Sequential star exchange for one orbit starting at t0:
// each satellite in slot order waits for its own contact, downloads, trains,
// and uploads (same contact if training fits, else the next one).
double star_orbit_time(const SimScenario& s,
                       const std::vector<std::vector<AccessWindow>>& orbit_windows,
                       int orbit, double t0);

RunResult run_fedleo(const SimScenario& s);
RunResult run_star_baseline(const SimScenario& s);

struct ComparisonResult {
    RunResult fedleo;
    RunResult star;
    int matched_rounds = 0;
    double fedleo_time = 0.0; // cumulative wall time over matched rounds
    double star_time = 0.0;
    double speedup = 0.0;
    int fedleo_rounds_to_target = -1;
    int star_rounds_to_target = -1;
};

ComparisonResult compare_runs(const SimScenario& s);

void write_events_csv(std::ostream& out, const std::vector<Event>& events);
void write_metrics_csv(std::ostream& out, const std::vector<RoundRecord>& rounds);
void write_comparison_csv(std::ostream& out, const ComparisonResult& cmp);

} // namespace orbitfed
