#include "orbitfed/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

#include "orbitfed/orbit.hpp"

namespace orbitfed {

PropagationPlan propagate_on_ring(int orbit, int ring_size,
                                  const std::vector<int>& source_slots,
                                  double hop_time, double t0) {
    if (source_slots.empty()) throw std::invalid_argument("no source slots");
    if (ring_size < 1) throw std::domain_error("ring size must be >= 1");

    PropagationPlan plan;
    plan.orbit = orbit;
    plan.source_slots = source_slots;
    plan.receive_time.assign(ring_size, 0.0);

    for (int slot = 0; slot < ring_size; ++slot) {
        int best = ring_size; // > max possible hop distance
        int arrivals = 0;
        for (int src : source_slots) {
            const int d = ring_hop_distance(slot, src, ring_size);
            if (d < best) {
                best = d;
                arrivals = 1;
            } else if (d == best) {
                ++arrivals;
            }
        }
        // A non-source slot hears the wavefront from both ring directions
        // when it is equidistant from sources (or from one source around
        // both sides); everything beyond the first copy is dropped.
        if (best > 0 && 2 * best < ring_size) {
            arrivals = std::max(arrivals, 1);
        } else if (best > 0 && ring_size > 1 && 2 * best == ring_size) {
            arrivals = std::max(arrivals, 2); // antipodal, both directions tie
        }
        plan.receive_time[slot] = t0 + best * hop_time;
        if (best > 0) plan.duplicate_drops += arrivals - 1;
    }
    return plan;
}

double relay_time_to_sink(int ring_size, double hop_time) {
    if (ring_size < 1) throw std::domain_error("ring size must be >= 1");
    return (ring_size / 2) * hop_time;
}

namespace {

double contact_need(const SinkProblem& p) {
    return p.t_downlink + p.t_uplink;
}

} // namespace

bool next_admissible_window(const SinkProblem& p, int slot,
                            AccessWindow& out_window) {
    const double ready = std::max(
        p.t_now, slot < static_cast<int>(p.train_done.size())
                     ? p.train_done[slot]
                     : p.t_now);
    for (const auto& w : p.windows[slot]) {
        if (w.t_end <= p.t_now) continue;
        const double eff_start = std::max({w.t_start, ready});
        if (p.strict_admission) {
            const double wait = std::max(0.0, w.t_start - p.t_now);
            const double t_sum = p.t_uplink + p.t_downlink + wait +
                                 p.t_train_parallel +
                                 relay_time_to_sink(p.ring_size, p.hop_time);
            if (w.duration() < t_sum) continue;
        }
        if (w.t_end - eff_start >= contact_need(p)) {
            out_window = w;
            return true;
        }
    }
    return false;
}

double total_round_latency(const SinkProblem& p, int slot) {
    AccessWindow w;
    if (!next_admissible_window(p, slot, w)) {
        throw std::runtime_error("candidate has no admissible future window");
    }
    const double wait = std::max(0.0, w.t_start - p.t_now);
    return p.t_uplink + p.t_downlink + wait + p.t_train_parallel +
           relay_time_to_sink(p.ring_size, p.hop_time);
}

SinkDecision select_sink(const SinkProblem& p) {
    if (p.ring_size < 1 ||
        p.windows.size() != static_cast<size_t>(p.ring_size)) {
        throw std::invalid_argument("malformed sink problem");
    }
    SinkDecision best;
    best.orbit = p.orbit;
    for (int slot = 0; slot < p.ring_size; ++slot) {
        AccessWindow w;
        if (!next_admissible_window(p, slot, w)) continue;
        best.candidate_set.push_back(slot);
        const double wait = std::max(0.0, w.t_start - p.t_now);
        const double t_sum = p.t_uplink + p.t_downlink + wait +
                             p.t_train_parallel +
                             relay_time_to_sink(p.ring_size, p.hop_time);
        const bool better =
            best.sink_slot < 0 || t_sum < best.t_sum_star ||
            (t_sum == best.t_sum_star &&
             w.t_start < best.chosen_window.t_start);
        if (better) {
            best.sink_slot = slot;
            best.t_sum_star = t_sum;
            best.t_wait = wait;
            best.chosen_window = w;
        }
    }
    if (best.sink_slot < 0) {
        throw std::runtime_error("no admissible sink candidate on orbit " +
                                 std::to_string(p.orbit));
    }
    return best;
}

} // namespace orbitfed
