#include "orbitfed/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <random>

#include "orbitfed/rng.hpp"

namespace orbitfed {

namespace {

std::string sat_name(int orbit, int slot) {
    return "sat " + std::to_string(orbit) + "." + std::to_string(slot);
}

double slant_range(const SimScenario& s, int orbit, int slot, double t) {
    return distance(
        satellite_position(s.constellation, orbit, slot, t, s.constants),
        ground_station_position(s.ground_station, t, s.constants));
}

struct BroadcastContact {
    double start = 0.0;       // uplink begins
    double complete = 0.0;    // all sources hold the model
    double t_uplink = 0.0;
    std::vector<int> sources;
};

// Earliest contact of any satellite on the orbit after t0 that leaves room
// for the full-band global-model uplink. Every slot visible at that moment
// with enough remaining window acts as a propagation source.
std::optional<BroadcastContact> find_broadcast(
    const SimScenario& s,
    const std::vector<std::vector<AccessWindow>>& orbit_windows, int orbit,
    double t0) {
    double best_start = std::numeric_limits<double>::infinity();
    for (int slot = 0; slot < s.constellation.sats_per_orbit; ++slot) {
        for (const auto& w : orbit_windows[slot]) {
            if (w.t_end <= t0) continue;
            const double eff = std::max(t0, w.t_start);
            const double t_up = uplink_latency(
                s.budget, s.payload, slant_range(s, orbit, slot, eff),
                s.constants);
            if (w.t_end - eff >= t_up) {
                best_start = std::min(best_start, eff);
                break; // windows are sorted; first viable one is earliest
            }
        }
    }
    if (!std::isfinite(best_start)) return std::nullopt;

    BroadcastContact contact;
    contact.start = best_start;
    double t_up_max = 0.0;
    for (int slot = 0; slot < s.constellation.sats_per_orbit; ++slot) {
        for (const auto& w : orbit_windows[slot]) {
            if (w.t_start <= best_start && best_start < w.t_end) {
                const double t_up = uplink_latency(
                    s.budget, s.payload,
                    slant_range(s, orbit, slot, best_start), s.constants);
                if (w.t_end - best_start >= t_up) {
                    contact.sources.push_back(slot);
                    t_up_max = std::max(t_up_max, t_up);
                }
            }
        }
    }
    if (contact.sources.empty()) return std::nullopt;
    contact.t_uplink = t_up_max;
    contact.complete = best_start + t_up_max;
    return contact;
}

uint64_t train_seed(const SimScenario& s, int round, int orbit, int slot) {
    const uint64_t index =
        static_cast<uint64_t>(round) * s.constellation.total_sats() +
        static_cast<uint64_t>(orbit) * s.constellation.sats_per_orbit + slot;
    return derive_seed(s.seed, seed_stream::training, index);
}

// Train every satellite of the round from the same global weights.
std::vector<ModelState> train_all(const SimScenario& s, const ModelState& global,
                                  int round) {
    const int n = s.constellation.total_sats();
    std::vector<ModelState> trained(n);
    if (s.parallel_training) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            TrainingConfig cfg = s.training;
            cfg.seed = train_seed(s, round, i / s.constellation.sats_per_orbit,
                                  i % s.constellation.sats_per_orbit);
            trained[i] = local_train(global, s.shards[i], cfg);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            TrainingConfig cfg = s.training;
            cfg.seed = train_seed(s, round, i / s.constellation.sats_per_orbit,
                                  i % s.constellation.sats_per_orbit);
            trained[i] = local_train(global, s.shards[i], cfg);
        }
    }
    return trained;
}

void sort_events(std::vector<Event>& events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) {
                         if (a.time != b.time) return a.time < b.time;
                         if (a.kind != b.kind) return a.kind < b.kind;
                         return a.subject < b.subject;
                     });
}

struct StarLeg {
    double wait_download = 0.0;
    double t_uplink = 0.0; // global model download at the satellite
    double train = 0.0;
    double wait_upload = 0.0;
    double t_downlink = 0.0;
    double finish = 0.0;   // absolute upload completion
    bool ok = false;
};

// One satellite's sequential star exchange starting at `cursor`.
StarLeg star_leg(const SimScenario& s,
                 const std::vector<AccessWindow>& windows, int orbit, int slot,
                 double cursor) {
    StarLeg leg;
    const double t_train =
        training_time(s.shards[orbit * s.constellation.sats_per_orbit + slot]
                          .size(),
                      s.training);
    for (size_t i = 0; i < windows.size(); ++i) {
        const auto& w = windows[i];
        if (w.t_end <= cursor) continue;
        const double dl_start = std::max(cursor, w.t_start);
        const double t_up = uplink_latency(
            s.budget, s.payload, slant_range(s, orbit, slot, dl_start),
            s.constants);
        if (w.t_end - dl_start < t_up) continue;
        const double train_end = dl_start + t_up + t_train;

        leg.wait_download = std::max(0.0, w.t_start - cursor);
        leg.t_uplink = t_up;
        leg.train = t_train;

        const double t_down_here = downlink_latency(
            s.budget, s.payload,
            slant_range(s, orbit, slot, std::min(train_end, w.t_end)),
            s.constants);
        if (train_end + t_down_here <= w.t_end) {
            leg.wait_upload = 0.0;
            leg.t_downlink = t_down_here;
            leg.finish = train_end + t_down_here;
            leg.ok = true;
            return leg;
        }
        // Training spills past the contact: upload in the next window that
        // can hold the downlink.
        for (size_t j = i; j < windows.size(); ++j) {
            const auto& w2 = windows[j];
            if (w2.t_end <= train_end) continue;
            const double ul_start = std::max(train_end, w2.t_start);
            const double t_down = downlink_latency(
                s.budget, s.payload, slant_range(s, orbit, slot, ul_start),
                s.constants);
            if (w2.t_end - ul_start < t_down) continue;
            leg.wait_upload = std::max(0.0, w2.t_start - train_end);
            leg.t_downlink = t_down;
            leg.finish = ul_start + t_down;
            leg.ok = true;
            return leg;
        }
        return leg; // download fits but no upload window within horizon
    }
    return leg;
}

} // namespace

double max_slant_range(double altitude_m, double min_elevation,
                       const PhysicalConstants& c) {
    const double r = c.earth_radius + altitude_m;
    const double re = c.earth_radius;
    const double s = std::sin(min_elevation);
    return std::sqrt(r * r - re * re * (1.0 - s * s)) - re * s;
}

double star_orbit_time(
    const SimScenario& s,
    const std::vector<std::vector<AccessWindow>>& orbit_windows, int orbit,
    double t0) {
    double cursor = t0;
    for (int slot = 0; slot < s.constellation.sats_per_orbit; ++slot) {
        const StarLeg leg = star_leg(s, orbit_windows[slot], orbit, slot, cursor);
        if (!leg.ok) return std::numeric_limits<double>::infinity();
        cursor = leg.finish;
    }
    return cursor - t0;
}

RunResult run_fedleo(const SimScenario& s) {
    const auto table = compute_access_windows(
        s.constellation, s.ground_station, 0.0, s.horizon, s.solver, s.constants);
    const auto grouped = group_windows(s.constellation, table);

    const int L = s.constellation.num_orbits;
    const int K = s.constellation.sats_per_orbit;
    const double hop_time = isl_hop_time(s.payload, s.budget);

    RunResult result;
    ModelState global = zero_model(s.shards.front().data.feature_dim,
                                   s.shards.front().data.num_classes);

    double t_clock = 0.0;
    for (int round = 0; round < s.max_rounds && t_clock < s.horizon; ++round) {
        const double round_start = t_clock;
        RoundRecord rec;
        rec.round = round;
        rec.round_start = round_start;

        const auto trained = train_all(s, global, round);

        std::vector<ModelState> partials;
        struct PendingUpload {
            int orbit;
            int sink;
            double ready; // all partials at the sink, window permitting
            AccessWindow window;
            OrbitRoundStats stats;
        };
        std::vector<PendingUpload> pending;
        bool aborted = false;

        for (int orbit = 0; orbit < L && !aborted; ++orbit) {
            const auto contact = find_broadcast(s, grouped[orbit], orbit,
                                                round_start);
            if (!contact) {
                result.diagnostics.push_back(
                    "round " + std::to_string(round) + ": orbit " +
                    std::to_string(orbit) +
                    " has no broadcast contact before the horizon");
                aborted = true;
                break;
            }
            result.events.push_back(
                {contact->start, "broadcast-start", "gs", round});

            const auto plan = propagate_on_ring(orbit, K, contact->sources,
                                                hop_time, contact->complete);

            std::vector<double> train_done(K);
            double t_train_max = 0.0;
            for (int slot = 0; slot < K; ++slot) {
                result.events.push_back({plan.receive_time[slot],
                                         "model-received",
                                         sat_name(orbit, slot), round});
                const double dur =
                    training_time(s.shards[orbit * K + slot].size(), s.training);
                t_train_max = std::max(t_train_max, dur);
                train_done[slot] = plan.receive_time[slot] + dur;
                result.events.push_back({train_done[slot], "train-complete",
                                         sat_name(orbit, slot), round});
            }

            // Ready time per candidate: every partial relayed to it.
            std::vector<double> ready(K);
            for (int c = 0; c < K; ++c) {
                double r = train_done[c];
                for (int k = 0; k < K; ++k) {
                    r = std::max(r, train_done[k] +
                                        ring_hop_distance(k, c, K) * hop_time);
                }
                ready[c] = r;
            }
            const double t_now =
                *std::max_element(train_done.begin(), train_done.end());

            const double d_worst = max_slant_range(
                s.constellation.altitude[orbit], s.ground_station.min_elevation,
                s.constants);
            SinkProblem problem;
            problem.orbit = orbit;
            problem.ring_size = K;
            problem.windows = grouped[orbit];
            problem.t_now = t_now;
            problem.train_done = ready;
            problem.t_train_parallel = t_train_max;
            problem.hop_time = hop_time;
            problem.t_uplink =
                uplink_latency(s.budget, s.payload, d_worst, s.constants);
            problem.t_downlink =
                downlink_latency(s.budget, s.payload, d_worst, s.constants);
            problem.strict_admission = s.strict_admission;

            SinkDecision decision;
            try {
                decision = select_sink(problem);
            } catch (const std::runtime_error&) {
                result.diagnostics.push_back(
                    "round " + std::to_string(round) + ": orbit " +
                    std::to_string(orbit) +
                    " starved: no admissible sink window before the horizon");
                aborted = true;
                break;
            }

            const double relay_done = ready[decision.sink_slot];
            result.events.push_back({relay_done, "relay-complete",
                                     sat_name(orbit, decision.sink_slot),
                                     round});

            std::vector<ModelState> orbit_models(trained.begin() + orbit * K,
                                                 trained.begin() + (orbit + 1) * K);
            partials.push_back(aggregate_partial(orbit_models));

            PendingUpload up;
            up.orbit = orbit;
            up.sink = decision.sink_slot;
            up.ready = std::max(relay_done, decision.chosen_window.t_start);
            up.window = decision.chosen_window;
            up.stats.orbit = orbit;
            up.stats.sink_slot = decision.sink_slot;
            up.stats.t_broadcast_start = contact->start;
            up.stats.t_uplink = contact->t_uplink;
            up.stats.t_train_max = t_train_max;
            up.stats.t_relay = relay_done - t_now;
            up.stats.t_wait_sink = decision.t_wait;
            up.stats.star_tsum =
                star_orbit_time(s, grouped[orbit], orbit, round_start);
            pending.push_back(std::move(up));
        }

        if (aborted) {
            rec.partial = true;
            if (!pending.empty()) result.rounds.push_back(rec);
            break;
        }

        // Sink uploads; RB contention only matters when fewer RBs than
        // simultaneously uploading sinks.
        std::sort(pending.begin(), pending.end(),
                  [](const PendingUpload& a, const PendingUpload& b) {
                      return a.ready != b.ready ? a.ready < b.ready
                                                : a.orbit < b.orbit;
                  });
        std::vector<std::pair<double, double>> busy;
        double t_agg = 0.0;
        bool upload_failed = false;
        for (auto& up : pending) {
            double start = up.ready;
            std::mt19937_64 backoff_rng(derive_seed(
                s.seed, seed_stream::backoff,
                static_cast<uint64_t>(round) * L + up.orbit));
            std::uniform_int_distribution<int> backoff(1, s.aloha_backoff_max);
            for (;;) {
                const double t_down = downlink_latency(
                    s.budget, s.payload,
                    slant_range(s, up.orbit, up.sink, start), s.constants);
                if (start + t_down > up.window.t_end) {
                    // Contention pushed the upload out of the window; take
                    // the sink's next window that fits.
                    SinkProblem retry;
                    retry.orbit = up.orbit;
                    retry.ring_size = K;
                    retry.windows = grouped[up.orbit];
                    retry.t_now = start;
                    retry.train_done.assign(K, start);
                    retry.hop_time = hop_time;
                    retry.t_uplink = 0.0;
                    retry.t_downlink = t_down;
                    AccessWindow w2;
                    if (!next_admissible_window(retry, up.sink, w2)) {
                        upload_failed = true;
                        break;
                    }
                    up.window = w2;
                    start = std::max(start, w2.t_start);
                    continue;
                }
                int overlapping = 0;
                for (const auto& [b0, b1] : busy) {
                    if (start < b1 && b0 < start + t_down) ++overlapping;
                }
                if (overlapping < s.budget.num_resource_blocks) {
                    busy.emplace_back(start, start + t_down);
                    up.stats.t_downlink = t_down;
                    up.stats.completion = start + t_down;
                    break;
                }
                const double slot_edge =
                    std::ceil(start / s.aloha_slot) * s.aloha_slot;
                start = slot_edge + backoff(backoff_rng) * s.aloha_slot;
            }
            if (upload_failed) {
                result.diagnostics.push_back(
                    "round " + std::to_string(round) + ": orbit " +
                    std::to_string(up.orbit) +
                    " upload deferred past the horizon");
                break;
            }
            result.events.push_back({up.stats.completion - up.stats.t_downlink,
                                     "sink-upload-start",
                                     sat_name(up.orbit, up.sink), round});
            result.events.push_back({up.stats.completion,
                                     "sink-upload-complete",
                                     sat_name(up.orbit, up.sink), round});
            up.stats.round_time = up.stats.completion - round_start;
            t_agg = std::max(t_agg, up.stats.completion);
        }
        if (upload_failed) {
            rec.partial = true;
            result.rounds.push_back(rec);
            break;
        }

        std::sort(pending.begin(), pending.end(),
                  [](const PendingUpload& a, const PendingUpload& b) {
                      return a.orbit < b.orbit;
                  });
        for (const auto& up : pending) rec.orbits.push_back(up.stats);

        global = aggregate_global(partials);
        result.events.push_back({t_agg, "global-aggregate", "gs", round});
        rec.wall_time = t_agg - round_start;
        rec.accuracy = evaluate(global, s.test_set);
        rec.loss = global_loss(s.shards, global);
        result.events.push_back({t_agg, "eval", "gs", round});
        result.rounds.push_back(rec);

        t_clock = t_agg;
        if (rec.accuracy >= s.target_accuracy) {
            result.reached_target = true;
            break;
        }
    }

    sort_events(result.events);
    result.final_model = global;
    result.finish_time = t_clock;
    return result;
}

RunResult run_star_baseline(const SimScenario& s) {
    const auto table = compute_access_windows(
        s.constellation, s.ground_station, 0.0, s.horizon, s.solver, s.constants);
    const auto grouped = group_windows(s.constellation, table);

    const int L = s.constellation.num_orbits;
    const int K = s.constellation.sats_per_orbit;

    RunResult result;
    ModelState global = zero_model(s.shards.front().data.feature_dim,
                                   s.shards.front().data.num_classes);

    double t_clock = 0.0;
    for (int round = 0; round < s.max_rounds && t_clock < s.horizon; ++round) {
        const double round_start = t_clock;
        RoundRecord rec;
        rec.round = round;
        rec.round_start = round_start;

        const auto trained = train_all(s, global, round);

        double t_agg = 0.0;
        bool aborted = false;
        for (int orbit = 0; orbit < L && !aborted; ++orbit) {
            OrbitRoundStats stats;
            stats.orbit = orbit;
            double cursor = round_start;
            for (int slot = 0; slot < K; ++slot) {
                const StarLeg leg =
                    star_leg(s, grouped[orbit][slot], orbit, slot, cursor);
                if (!leg.ok) {
                    result.diagnostics.push_back(
                        "round " + std::to_string(round) + ": " +
                        sat_name(orbit, slot) +
                        " has no exchange contact before the horizon");
                    aborted = true;
                    break;
                }
                const double dl_start = cursor + leg.wait_download;
                result.events.push_back(
                    {dl_start, "broadcast-start", "gs", round});
                result.events.push_back({dl_start + leg.t_uplink,
                                         "model-received",
                                         sat_name(orbit, slot), round});
                const double train_end =
                    dl_start + leg.t_uplink + leg.train;
                result.events.push_back({train_end, "train-complete",
                                         sat_name(orbit, slot), round});
                result.events.push_back({leg.finish - leg.t_downlink,
                                         "sink-upload-start",
                                         sat_name(orbit, slot), round});
                result.events.push_back({leg.finish, "sink-upload-complete",
                                         sat_name(orbit, slot), round});
                stats.t_uplink += leg.t_uplink;
                stats.t_downlink += leg.t_downlink;
                stats.t_train_max = std::max(stats.t_train_max, leg.train);
                stats.t_wait_sink += leg.wait_download + leg.wait_upload;
                cursor = leg.finish;
            }
            stats.completion = cursor;
            stats.round_time = cursor - round_start;
            stats.star_tsum = stats.round_time;
            rec.orbits.push_back(stats);
            t_agg = std::max(t_agg, cursor);
        }
        if (aborted) {
            rec.partial = true;
            result.rounds.push_back(rec);
            break;
        }

        global = aggregate_global(trained);
        result.events.push_back({t_agg, "global-aggregate", "gs", round});
        rec.wall_time = t_agg - round_start;
        rec.accuracy = evaluate(global, s.test_set);
        rec.loss = global_loss(s.shards, global);
        result.events.push_back({t_agg, "eval", "gs", round});
        result.rounds.push_back(rec);

        t_clock = t_agg;
        if (rec.accuracy >= s.target_accuracy) {
            result.reached_target = true;
            break;
        }
    }

    sort_events(result.events);
    result.final_model = global;
    result.finish_time = t_clock;
    return result;
}

ComparisonResult compare_runs(const SimScenario& s) {
    ComparisonResult cmp;
    cmp.fedleo = run_fedleo(s);
    cmp.star = run_star_baseline(s);

    auto completed = [](const RunResult& r) {
        int n = 0;
        for (const auto& rec : r.rounds) {
            if (!rec.partial) ++n;
        }
        return n;
    };
    cmp.matched_rounds = std::min(completed(cmp.fedleo), completed(cmp.star));
    for (int i = 0; i < cmp.matched_rounds; ++i) {
        cmp.fedleo_time += cmp.fedleo.rounds[i].wall_time;
        cmp.star_time += cmp.star.rounds[i].wall_time;
    }
    cmp.speedup = cmp.fedleo_time > 0.0 ? cmp.star_time / cmp.fedleo_time : 0.0;

    auto rounds_to_target = [&](const RunResult& r) {
        for (const auto& rec : r.rounds) {
            if (!rec.partial && rec.accuracy >= s.target_accuracy) {
                return rec.round + 1;
            }
        }
        return -1;
    };
    cmp.fedleo_rounds_to_target = rounds_to_target(cmp.fedleo);
    cmp.star_rounds_to_target = rounds_to_target(cmp.star);
    return cmp;
}

void write_events_csv(std::ostream& out, const std::vector<Event>& events) {
    out << "time,kind,subject,round\n";
    char buf[160];
    for (const auto& e : events) {
        std::snprintf(buf, sizeof(buf), "%.6f,%s,%s,%d\n", e.time,
                      e.kind.c_str(), e.subject.c_str(), e.round);
        out << buf;
    }
}

void write_metrics_csv(std::ostream& out,
                       const std::vector<RoundRecord>& rounds) {
    out << "round,wall_time_s,accuracy,loss\n";
    char buf[160];
    for (const auto& r : rounds) {
        if (r.partial) continue;
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f\n", r.round,
                      r.wall_time, r.accuracy, r.loss);
        out << buf;
    }
}

void write_comparison_csv(std::ostream& out, const ComparisonResult& cmp) {
    out << "round,fedleo_wall_s,star_wall_s,fedleo_cum_s,star_cum_s,"
           "fedleo_accuracy,star_accuracy,speedup_cum\n";
    char buf[256];
    double fcum = 0.0, scum = 0.0;
    for (int i = 0; i < cmp.matched_rounds; ++i) {
        fcum += cmp.fedleo.rounds[i].wall_time;
        scum += cmp.star.rounds[i].wall_time;
        std::snprintf(buf, sizeof(buf),
                      "%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", i,
                      cmp.fedleo.rounds[i].wall_time,
                      cmp.star.rounds[i].wall_time, fcum, scum,
                      cmp.fedleo.rounds[i].accuracy,
                      cmp.star.rounds[i].accuracy,
                      fcum > 0.0 ? scum / fcum : 0.0);
        out << buf;
    }
}

} // namespace orbitfed
