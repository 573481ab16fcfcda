// Timing harness for the parallel kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orbitfed/data.hpp"
#include "orbitfed/rng.hpp"
#include "orbitfed/windows.hpp"

using namespace orbitfed;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

template <typename F>
double time_s(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void bench_windows() {
    const auto spec = make_walker_delta(5, 8, 1500e3, 80.0 * kDeg);
    GroundStation gs;
    gs.latitude = 37.9514 * kDeg;
    gs.longitude = -91.7713 * kDeg;
    gs.min_elevation = 10.0 * kDeg;
    const double horizon = 3 * 86400.0;

    size_t n_serial = 0, n_parallel = 0;
    const double t_serial = time_s([&] {
        n_serial = compute_access_windows_serial(spec, gs, 0.0, horizon).size();
    });
    const double t_parallel = time_s([&] {
        n_parallel = compute_access_windows(spec, gs, 0.0, horizon).size();
    });
    std::printf("window solver   40 sats, 3 d   serial %7.3f s   parallel %7.3f s"
                "   speedup %5.2fx   (%zu/%zu windows)\n",
                t_serial, t_parallel, t_serial / t_parallel, n_serial,
                n_parallel);
}

void bench_training() {
    const auto spec = make_walker_delta(5, 8, 1500e3, 80.0 * kDeg);
    SyntheticDataParams params;
    params.num_samples = 8000;
    const auto corpus = make_synthetic_dataset(params, 11);
    const auto shards =
        partition_data(corpus, spec, PartitionMode::iid, 12);

    TrainingConfig cfg;
    cfg.local_epochs = 60;
    const ModelState global =
        zero_model(corpus.feature_dim, corpus.num_classes);

    std::vector<ModelState> out(shards.size());
    const double t_serial = time_s([&] {
        for (size_t i = 0; i < shards.size(); ++i) {
            TrainingConfig c = cfg;
            c.seed = derive_seed(1, seed_stream::training, i);
            out[i] = local_train(global, shards[i], c);
        }
    });
    const double t_parallel = time_s([&] {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < static_cast<int>(shards.size()); ++i) {
            TrainingConfig c = cfg;
            c.seed = derive_seed(1, seed_stream::training, i);
            out[i] = local_train(global, shards[i], c);
        }
    });
    std::printf("local training  40 shards x %d epochs   serial %7.3f s   "
                "parallel %7.3f s   speedup %5.2fx\n",
                cfg.local_epochs, t_serial, t_parallel,
                t_serial / t_parallel);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel paths run serially\n");
#endif
    bench_windows();
    bench_training();
    return 0;
}
