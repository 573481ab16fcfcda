#pragma once

#include <vector>

#include "orbitfed/link.hpp"
#include "orbitfed/windows.hpp"

namespace orbitfed {

// Flooding of the global model around one orbital ring, both directions from
// every source; duplicate arrivals are counted and dropped.
struct PropagationPlan {
    int orbit = 0;
    std::vector<int> source_slots;
    std::vector<double> receive_time; // per slot, absolute seconds
    int duplicate_drops = 0;
};

PropagationPlan propagate_on_ring(int orbit, int ring_size,
                                  const std::vector<int>& source_slots,
                                  double hop_time, double t0);

// Worst-case relay time for every non-sink satellite to reach the sink.
double relay_time_to_sink(int ring_size, double hop_time);

// Inputs shared by every satellite on one orbit when electing the sink.
struct SinkProblem {
    int orbit = 0;
    int ring_size = 0;
    // Per-slot future windows, sorted by start time.
    std::vector<std::vector<AccessWindow>> windows;
    double t_now = 0.0;              // decision time (training complete)
    std::vector<double> train_done;  // absolute completion time per slot
    double t_train_parallel = 0.0;   // max over the orbit of t_train
    double hop_time = 0.0;           // one ISL hop, s
    double t_uplink = 0.0;           // t_c^U for the sink contact
    double t_downlink = 0.0;         // t_c^D for the sink contact
    // Paper-literal admission: window duration must cover the whole T*_sum
    // including waiting and training, not just the on-contact work.
    bool strict_admission = false;
};

struct SinkDecision {
    int orbit = 0;
    int sink_slot = -1;
    std::vector<int> candidate_set;
    double t_sum_star = 0.0;
    double t_wait = 0.0;
    AccessWindow chosen_window;
};

// Next admissible window of one candidate slot, if any.
// The window must leave room for the sink's on-contact work (partial-model
// downlink plus next-global-model uplink) after the candidate finishes
// training.
bool next_admissible_window(const SinkProblem& p, int slot,
                            AccessWindow& out_window);

// T*_sum of one candidate: t_c^U + t_c^D + t_wait* + t_train + t_h*.
// Throws if the candidate has no admissible future window.
double total_round_latency(const SinkProblem& p, int slot);

// Minimizes T*_sum over admissible candidates; ties break to the earlier
// window start, then the lower slot index. Pure function of shared inputs,
// so every satellite reaches the same decision.
SinkDecision select_sink(const SinkProblem& p);

} // namespace orbitfed
