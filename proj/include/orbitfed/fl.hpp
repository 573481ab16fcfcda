#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbitfed/orbit.hpp"

namespace orbitfed {

// Row-major sample matrix; features are flat with stride feature_dim.
struct Dataset {
    size_t feature_dim = 0;
    int num_classes = 0;
    std::vector<double> features;
    std::vector<int> labels;

    size_t size() const { return labels.size(); }
    const double* sample(size_t i) const { return features.data() + i * feature_dim; }
    std::vector<size_t> class_histogram() const;
};

struct DataShard {
    SatelliteId owner;
    Dataset data;

    size_t size() const { return data.size(); }
};

// Flat weight vector for the linear softmax model: num_classes rows of
// (feature_dim + 1), bias last.
struct ModelState {
    std::vector<double> weights;
    size_t sample_count = 0;
    std::vector<size_t> class_histogram;

    void check_finite() const;
};

struct TrainingConfig {
    int local_epochs = 100;        // I
    double learning_rate = 0.001;  // eta
    int batch_size = 32;           // b_k
    double cycles_per_sample = 1e3; // c_k
    double cpu_freq = 1e9;         // f_k, Hz
    uint64_t seed = 0;

    void validate() const;
};

enum class PartitionMode { iid, non_iid };

size_t model_dim(size_t feature_dim, int num_classes);
ModelState zero_model(size_t feature_dim, int num_classes);

// Mean multinomial cross-entropy of the linear softmax model over the shard.
double local_loss(const ModelState& model, const DataShard& shard);

// Data-size-weighted mean of local losses; equals the pooled-dataset loss.
double global_loss(const std::vector<DataShard>& shards,
                   const ModelState& model);

// Analytic gradient of the mean cross-entropy over the given sample indices.
std::vector<double> loss_gradient(const std::vector<double>& weights,
                                  const Dataset& data,
                                  const std::vector<size_t>& indices);

// I epochs of seeded mini-batch SGD; the final batch of an epoch may be short.
ModelState local_train(const ModelState& model, const DataShard& shard,
                       const TrainingConfig& cfg);

// m_k-weighted average of the local models of one orbit (partial global model).
ModelState aggregate_partial(const std::vector<ModelState>& models);

// m_{K_l}-weighted average of the per-orbit partials into the global model.
ModelState aggregate_global(const std::vector<ModelState>& partials);

// t_train = I * n_k * b_k * c_k / f_k with n_k = ceil(m_k / b_k).
double training_time(size_t num_samples, const TrainingConfig& cfg);

// Argmax accuracy; ties break to the lowest class index.
double evaluate(const ModelState& model, const Dataset& test_set);

int predict(const std::vector<double>& weights, const Dataset& data, size_t i);

} // namespace orbitfed
