// orbitfed: batch CLI around the FedLEO constellation simulator.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orbitfed/scenario.hpp"

namespace fs = std::filesystem;
using namespace orbitfed;

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::optional<double> horizon;
    std::optional<uint64_t> seed;
    std::string out_dir = ".";
    std::optional<std::string> mode;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scenario", opts.scenario_path,
                    "Scenario TOML file (defaults apply when omitted)");
    cmd->add_option("--horizon", opts.horizon, "Override horizon, seconds");
    cmd->add_option("--seed", opts.seed, "Override master seed");
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--mode", opts.mode,
                    "Rate mode: fixed-rate or shannon")
        ->check(CLI::IsMember({"fixed-rate", "shannon"}));
}

Scenario resolve_scenario(const CommonOpts& opts) {
    Scenario sc = opts.scenario_path.empty()
                      ? Scenario{}
                      : load_scenario(opts.scenario_path);
    if (opts.horizon) sc.horizon_s = *opts.horizon;
    if (opts.seed) sc.seed = *opts.seed;
    if (opts.mode) sc.rate_mode = *opts.mode;
    sc.validate();
    return sc;
}

fs::path resolve_out_dir(const CommonOpts& opts) {
    const char* env = std::getenv("ORBITFED_OUT");
    fs::path dir = env != nullptr ? fs::path(env) : fs::path(opts.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, auto&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
}

void emit_run(const fs::path& dir, const Scenario& sc, const RunResult& run,
              const std::vector<AccessWindow>& windows) {
    write_file(dir / "windows.csv",
               [&](std::ostream& o) { write_windows_csv(o, windows); });
    write_file(dir / "events.csv",
               [&](std::ostream& o) { write_events_csv(o, run.events); });
    write_file(dir / "metrics.csv",
               [&](std::ostream& o) { write_metrics_csv(o, run.rounds); });
    for (const auto& diag : run.diagnostics) {
        std::cerr << "warning: " << diag << "\n";
    }
    int completed = 0;
    for (const auto& r : run.rounds) {
        if (!r.partial) ++completed;
    }
    std::printf("rounds completed: %d\n", completed);
    if (!run.rounds.empty() && !run.rounds.back().partial) {
        std::printf("final accuracy: %.4f  loss: %.4f  finish: %.1f s\n",
                    run.rounds.back().accuracy, run.rounds.back().loss,
                    run.finish_time);
    }
}

std::vector<AccessWindow> windows_for(const Scenario& sc) {
    return compute_access_windows(build_constellation(sc),
                                  build_ground_station(sc), 0.0, sc.horizon_s,
                                  WindowSolverParams{sc.coarse_step_s,
                                                     sc.tolerance_s});
}

int cmd_windows(const CommonOpts& opts) {
    const Scenario sc = resolve_scenario(opts);
    const auto dir = resolve_out_dir(opts);
    const auto table = windows_for(sc);
    write_file(dir / "windows.csv",
               [&](std::ostream& o) { write_windows_csv(o, table); });
    std::printf("wrote %zu windows to %s\n", table.size(),
                (dir / "windows.csv").c_str());
    return 0;
}

int cmd_run(const CommonOpts& opts, bool fedleo) {
    const Scenario sc = resolve_scenario(opts);
    const auto dir = resolve_out_dir(opts);
    const SimScenario sim = build_sim(sc);
    const RunResult run = fedleo ? run_fedleo(sim) : run_star_baseline(sim);
    emit_run(dir, sc, run, windows_for(sc));
    return 0;
}

int cmd_compare(const CommonOpts& opts) {
    const Scenario sc = resolve_scenario(opts);
    const auto dir = resolve_out_dir(opts);
    const SimScenario sim = build_sim(sc);
    const ComparisonResult cmp = compare_runs(sim);

    write_file(dir / "compare.csv",
               [&](std::ostream& o) { write_comparison_csv(o, cmp); });
    write_file(dir / "fedleo_metrics.csv",
               [&](std::ostream& o) { write_metrics_csv(o, cmp.fedleo.rounds); });
    write_file(dir / "star_metrics.csv",
               [&](std::ostream& o) { write_metrics_csv(o, cmp.star.rounds); });
    write_file(dir / "fedleo_events.csv",
               [&](std::ostream& o) { write_events_csv(o, cmp.fedleo.events); });
    write_file(dir / "star_events.csv",
               [&](std::ostream& o) { write_events_csv(o, cmp.star.events); });

    std::printf("%-28s %14s %14s\n", "", "FedLEO", "star");
    std::printf("%-28s %14d %14d\n", "rounds compared",
                cmp.matched_rounds, cmp.matched_rounds);
    std::printf("%-28s %14.1f %14.1f\n", "cumulative wall time (s)",
                cmp.fedleo_time, cmp.star_time);
    std::printf("%-28s %14d %14d\n", "rounds to target accuracy",
                cmp.fedleo_rounds_to_target, cmp.star_rounds_to_target);
    if (cmp.matched_rounds > 0) {
        std::printf("%-28s %14.4f %14.4f\n", "final accuracy",
                    cmp.fedleo.rounds[cmp.matched_rounds - 1].accuracy,
                    cmp.star.rounds[cmp.matched_rounds - 1].accuracy);
    }
    std::printf("%-28s %14.3f\n", "speedup (star/fedleo)", cmp.speedup);
    return 0;
}

int cmd_partition_report(const CommonOpts& opts) {
    const Scenario sc = resolve_scenario(opts);
    const auto dir = resolve_out_dir(opts);
    const SimScenario sim = build_sim(sc);
    write_file(dir / "partition.csv", [&](std::ostream& o) {
        o << "orbit,slot,num_samples";
        for (int c = 0; c < sc.num_classes; ++c) o << ",class_" << c;
        o << "\n";
        for (const auto& shard : sim.shards) {
            o << shard.owner.orbit << "," << shard.owner.slot << ","
              << shard.size();
            for (size_t h : shard.data.class_histogram()) o << "," << h;
            o << "\n";
        }
    });
    std::printf("wrote %s\n", (dir / "partition.csv").c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbitfed: LEO federated-learning constellation simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* windows = app.add_subcommand("windows", "Emit the access-window table");
    auto* fedleo = app.add_subcommand("run-fedleo", "Run the FedLEO protocol");
    auto* star = app.add_subcommand("run-star", "Run the star-topology baseline");
    auto* compare = app.add_subcommand("compare", "Run both and compare");
    auto* partition =
        app.add_subcommand("partition-report", "Emit per-satellite class histograms");
    for (auto* cmd : {windows, fedleo, star, compare, partition}) {
        add_common(cmd, opts);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    // Scenario loading and validation failures exit 1; failures during the
    // run itself exit 2.
    try {
        resolve_scenario(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (windows->parsed()) return cmd_windows(opts);
        if (fedleo->parsed()) return cmd_run(opts, true);
        if (star->parsed()) return cmd_run(opts, false);
        if (compare->parsed()) return cmd_compare(opts);
        if (partition->parsed()) return cmd_partition_report(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
