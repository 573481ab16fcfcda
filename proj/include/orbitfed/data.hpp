#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "orbitfed/fl.hpp"

namespace orbitfed {

struct SyntheticDataParams {
    size_t num_samples = 4000;
    size_t feature_dim = 20;
    int num_classes = 10;
    double separation = 3.0; // scale of the class-mean spread
};

// Seeded Gaussian-blob classification corpus with balanced classes.
Dataset make_synthetic_dataset(const SyntheticDataParams& params, uint64_t seed);

// IDX readers (big-endian magic, dims, raw bytes). Pixel values scale to [0,1].
Dataset load_idx_dataset(const std::string& images_path,
                         const std::string& labels_path, int num_classes = 10);

// Held-out split: `test_fraction` of the corpus, seeded shuffle.
std::pair<Dataset, Dataset> split_test(const Dataset& dataset,
                                       double test_fraction, uint64_t seed);

// One shard per satellite, indexed orbit * K + slot. IID shuffles and splits
// equally; non-IID assigns class subsets per orbit (the 4/6 split at L=5,
// floor(0.4*C) classes to the first ceil(0.4*L) orbits otherwise).
std::vector<DataShard> partition_data(const Dataset& dataset,
                                      const ConstellationSpec& spec,
                                      PartitionMode mode, uint64_t seed);

Dataset pool_shards(const std::vector<DataShard>& shards);

} // namespace orbitfed
