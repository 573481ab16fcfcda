#include "orbitfed/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include "orbitfed/rng.hpp"

namespace orbitfed {

Dataset make_synthetic_dataset(const SyntheticDataParams& params,
                               uint64_t seed) {
    if (params.num_samples == 0 || params.feature_dim == 0 ||
        params.num_classes < 2) {
        throw std::domain_error("invalid synthetic dataset parameters");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);

    // Class means drawn once, then unit-variance samples around them.
    std::vector<double> means(params.num_classes * params.feature_dim);
    for (double& m : means) m = params.separation * unit(rng);

    Dataset data;
    data.feature_dim = params.feature_dim;
    data.num_classes = params.num_classes;
    data.features.resize(params.num_samples * params.feature_dim);
    data.labels.resize(params.num_samples);
    for (size_t i = 0; i < params.num_samples; ++i) {
        const int y = static_cast<int>(i % params.num_classes);
        data.labels[i] = y;
        const double* mean = means.data() + y * params.feature_dim;
        double* x = data.features.data() + i * params.feature_dim;
        for (size_t j = 0; j < params.feature_dim; ++j) {
            x[j] = mean[j] + unit(rng);
        }
    }
    return data;
}

namespace {

uint32_t read_be32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("truncated IDX file: " + path);
    return (uint32_t(b[0]) << 24) | (uint32_t(b[1]) << 16) |
           (uint32_t(b[2]) << 8) | uint32_t(b[3]);
}

} // namespace

Dataset load_idx_dataset(const std::string& images_path,
                         const std::string& labels_path, int num_classes) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw std::runtime_error("cannot open " + images_path);
    const uint32_t img_magic = read_be32(img, images_path);
    if ((img_magic & 0xffffff00u) != 0x00000800u) {
        throw std::runtime_error("bad IDX magic in " + images_path);
    }
    const int img_dims = img_magic & 0xff;
    if (img_dims < 1 || img_dims > 3) {
        throw std::runtime_error("unsupported IDX rank in " + images_path);
    }
    uint32_t n = read_be32(img, images_path);
    size_t per_sample = 1;
    for (int d = 1; d < img_dims; ++d) per_sample *= read_be32(img, images_path);

    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw std::runtime_error("cannot open " + labels_path);
    if (read_be32(lab, labels_path) != 0x00000801u) {
        throw std::runtime_error("bad IDX magic in " + labels_path);
    }
    if (read_be32(lab, labels_path) != n) {
        throw std::runtime_error("IDX image/label count mismatch");
    }

    Dataset data;
    data.feature_dim = per_sample;
    data.num_classes = num_classes;
    data.features.resize(size_t(n) * per_sample);
    data.labels.resize(n);
    std::vector<unsigned char> row(per_sample);
    for (uint32_t i = 0; i < n; ++i) {
        img.read(reinterpret_cast<char*>(row.data()), per_sample);
        if (!img) throw std::runtime_error("truncated IDX file: " + images_path);
        for (size_t j = 0; j < per_sample; ++j) {
            data.features[size_t(i) * per_sample + j] = row[j] / 255.0;
        }
        char y;
        lab.read(&y, 1);
        if (!lab) throw std::runtime_error("truncated IDX file: " + labels_path);
        data.labels[i] = static_cast<unsigned char>(y);
        if (data.labels[i] >= num_classes) {
            throw std::runtime_error("IDX label exceeds num_classes");
        }
    }
    return data;
}

namespace {

Dataset take(const Dataset& src, const std::vector<size_t>& indices) {
    Dataset out;
    out.feature_dim = src.feature_dim;
    out.num_classes = src.num_classes;
    out.features.reserve(indices.size() * src.feature_dim);
    out.labels.reserve(indices.size());
    for (size_t i : indices) {
        const double* x = src.sample(i);
        out.features.insert(out.features.end(), x, x + src.feature_dim);
        out.labels.push_back(src.labels[i]);
    }
    return out;
}

} // namespace

std::pair<Dataset, Dataset> split_test(const Dataset& dataset,
                                       double test_fraction, uint64_t seed) {
    if (test_fraction < 0.0 || test_fraction >= 1.0) {
        throw std::domain_error("test_fraction must lie in [0, 1)");
    }
    std::vector<size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const size_t n_test =
        static_cast<size_t>(std::floor(dataset.size() * test_fraction));
    std::vector<size_t> test_idx(order.begin(), order.begin() + n_test);
    std::vector<size_t> train_idx(order.begin() + n_test, order.end());
    return {take(dataset, train_idx), take(dataset, test_idx)};
}

std::vector<DataShard> partition_data(const Dataset& dataset,
                                      const ConstellationSpec& spec,
                                      PartitionMode mode, uint64_t seed) {
    spec.validate();
    const size_t n_sats = static_cast<size_t>(spec.total_sats());
    if (dataset.size() < n_sats) {
        throw std::domain_error("dataset smaller than satellite count");
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<size_t>> assignment(n_sats);

    if (mode == PartitionMode::iid) {
        std::vector<size_t> order(dataset.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t i = 0; i < order.size(); ++i) {
            assignment[i % n_sats].push_back(order[i]);
        }
    } else {
        // First ceil(0.4*L) orbits train on the first floor(0.4*C) classes,
        // the rest on the remaining classes (the 4/6 split at L=5, C=10).
        const int L = spec.num_orbits;
        const int C = dataset.num_classes;
        const int first_orbits =
            std::min(L, static_cast<int>(std::ceil(0.4 * L)));
        const int first_classes =
            L > first_orbits
                ? std::max(1, static_cast<int>(std::floor(0.4 * C)))
                : C;

        std::vector<size_t> group_a, group_b;
        for (size_t i = 0; i < dataset.size(); ++i) {
            (dataset.labels[i] < first_classes ? group_a : group_b).push_back(i);
        }
        std::shuffle(group_a.begin(), group_a.end(), rng);
        std::shuffle(group_b.begin(), group_b.end(), rng);

        const size_t sats_a = static_cast<size_t>(first_orbits) * spec.sats_per_orbit;
        for (size_t i = 0; i < group_a.size(); ++i) {
            assignment[i % sats_a].push_back(group_a[i]);
        }
        const size_t sats_b = n_sats - sats_a;
        for (size_t i = 0; i < group_b.size(); ++i) {
            assignment[sats_a + i % sats_b].push_back(group_b[i]);
        }
    }

    std::vector<DataShard> shards;
    shards.reserve(n_sats);
    for (size_t s = 0; s < n_sats; ++s) {
        if (assignment[s].empty()) {
            throw std::domain_error("partition produced an empty shard");
        }
        std::sort(assignment[s].begin(), assignment[s].end());
        DataShard shard;
        shard.owner = {static_cast<int>(s) / spec.sats_per_orbit,
                       static_cast<int>(s) % spec.sats_per_orbit};
        shard.data = take(dataset, assignment[s]);
        shards.push_back(std::move(shard));
    }
    return shards;
}

Dataset pool_shards(const std::vector<DataShard>& shards) {
    if (shards.empty()) throw std::domain_error("no shards");
    Dataset out;
    out.feature_dim = shards.front().data.feature_dim;
    out.num_classes = shards.front().data.num_classes;
    for (const auto& shard : shards) {
        out.features.insert(out.features.end(), shard.data.features.begin(),
                            shard.data.features.end());
        out.labels.insert(out.labels.end(), shard.data.labels.begin(),
                          shard.data.labels.end());
    }
    return out;
}

} // namespace orbitfed
