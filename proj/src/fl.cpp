#include "orbitfed/fl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "orbitfed/rng.hpp"

namespace orbitfed {

std::vector<size_t> Dataset::class_histogram() const {
    std::vector<size_t> hist(num_classes, 0);
    for (int y : labels) {
        if (y < 0 || y >= num_classes) {
            throw std::domain_error("label out of range");
        }
        ++hist[y];
    }
    return hist;
}

void ModelState::check_finite() const {
    for (double w : weights) {
        if (!std::isfinite(w)) {
            throw std::runtime_error("model weights are not finite");
        }
    }
}

void TrainingConfig::validate() const {
    if (local_epochs < 1) throw std::domain_error("local_epochs must be >= 1");
    if (learning_rate <= 0) throw std::domain_error("learning_rate must be positive");
    if (batch_size < 1) throw std::domain_error("batch_size must be >= 1");
    if (cpu_freq <= 0) throw std::domain_error("cpu_freq must be positive");
}

size_t model_dim(size_t feature_dim, int num_classes) {
    return (feature_dim + 1) * static_cast<size_t>(num_classes);
}

ModelState zero_model(size_t feature_dim, int num_classes) {
    ModelState m;
    m.weights.assign(model_dim(feature_dim, num_classes), 0.0);
    m.class_histogram.assign(num_classes, 0);
    return m;
}

namespace {

// Class logits for sample i; w laid out as num_classes rows of (d+1).
void logits_for(const std::vector<double>& w, const Dataset& data, size_t i,
                std::vector<double>& out) {
    const size_t d = data.feature_dim;
    const int C = data.num_classes;
    const double* x = data.sample(i);
    out.resize(C);
    for (int c = 0; c < C; ++c) {
        const double* row = w.data() + c * (d + 1);
        double z = row[d]; // bias
        for (size_t j = 0; j < d; ++j) z += row[j] * x[j];
        out[c] = z;
    }
}

void softmax_inplace(std::vector<double>& z) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

double sample_loss(const std::vector<double>& w, const Dataset& data, size_t i,
                   std::vector<double>& scratch) {
    logits_for(w, data, i, scratch);
    const double zmax = *std::max_element(scratch.begin(), scratch.end());
    double lse = 0.0;
    for (double v : scratch) lse += std::exp(v - zmax);
    return std::log(lse) + zmax - scratch[data.labels[i]];
}

} // namespace

double local_loss(const ModelState& model, const DataShard& shard) {
    if (shard.size() == 0) throw std::domain_error("shard is empty");
    std::vector<double> scratch;
    double total = 0.0;
    for (size_t i = 0; i < shard.size(); ++i) {
        total += sample_loss(model.weights, shard.data, i, scratch);
    }
    return total / static_cast<double>(shard.size());
}

double global_loss(const std::vector<DataShard>& shards,
                   const ModelState& model) {
    if (shards.empty()) throw std::domain_error("no shards");
    double total = 0.0;
    size_t m = 0;
    for (const auto& shard : shards) {
        total += local_loss(model, shard) * static_cast<double>(shard.size());
        m += shard.size();
    }
    return total / static_cast<double>(m);
}

std::vector<double> loss_gradient(const std::vector<double>& weights,
                                  const Dataset& data,
                                  const std::vector<size_t>& indices) {
    if (indices.empty()) throw std::domain_error("empty batch");
    const size_t d = data.feature_dim;
    const int C = data.num_classes;
    std::vector<double> grad(weights.size(), 0.0);
    std::vector<double> p;
    for (size_t i : indices) {
        logits_for(weights, data, i, p);
        softmax_inplace(p);
        const double* x = data.sample(i);
        for (int c = 0; c < C; ++c) {
            const double delta = p[c] - (c == data.labels[i] ? 1.0 : 0.0);
            double* row = grad.data() + c * (d + 1);
            for (size_t j = 0; j < d; ++j) row[j] += delta * x[j];
            row[d] += delta;
        }
    }
    const double inv = 1.0 / static_cast<double>(indices.size());
    for (double& g : grad) g *= inv;
    return grad;
}

ModelState local_train(const ModelState& model, const DataShard& shard,
                       const TrainingConfig& cfg) {
    cfg.validate();
    if (shard.size() == 0) throw std::domain_error("shard is empty");

    ModelState out = model;
    out.sample_count = shard.size();
    out.class_histogram = shard.data.class_histogram();

    std::vector<size_t> order(shard.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(cfg.seed);

    const size_t m = shard.size();
    const size_t b = static_cast<size_t>(cfg.batch_size);
    std::vector<size_t> batch;
    for (int epoch = 0; epoch < cfg.local_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t start = 0; start < m; start += b) {
            const size_t end = std::min(start + b, m);
            batch.assign(order.begin() + start, order.begin() + end);
            const auto grad = loss_gradient(out.weights, shard.data, batch);
            for (size_t j = 0; j < out.weights.size(); ++j) {
                out.weights[j] -= cfg.learning_rate * grad[j];
            }
        }
        for (double w : out.weights) {
            if (!std::isfinite(w)) {
                throw std::runtime_error("training diverged at epoch " +
                                         std::to_string(epoch));
            }
        }
    }
    return out;
}

namespace {

ModelState weighted_average(const std::vector<ModelState>& models) {
    if (models.empty()) throw std::domain_error("nothing to aggregate");
    const size_t dim = models.front().weights.size();
    const size_t classes = models.front().class_histogram.size();
    size_t total = 0;
    for (const auto& m : models) {
        if (m.weights.size() != dim || m.class_histogram.size() != classes) {
            throw std::invalid_argument("model dimension mismatch");
        }
        total += m.sample_count;
    }
    if (total == 0) throw std::domain_error("aggregation over zero samples");

    ModelState out;
    out.weights.assign(dim, 0.0);
    out.class_histogram.assign(classes, 0);
    out.sample_count = total;
    for (const auto& m : models) {
        const double w = static_cast<double>(m.sample_count) /
                         static_cast<double>(total);
        for (size_t j = 0; j < dim; ++j) out.weights[j] += w * m.weights[j];
        for (size_t cIdx = 0; cIdx < classes; ++cIdx) {
            out.class_histogram[cIdx] += m.class_histogram[cIdx];
        }
    }
    out.check_finite();
    return out;
}

} // namespace

ModelState aggregate_partial(const std::vector<ModelState>& models) {
    return weighted_average(models);
}

ModelState aggregate_global(const std::vector<ModelState>& partials) {
    return weighted_average(partials);
}

double training_time(size_t num_samples, const TrainingConfig& cfg) {
    if (num_samples < 1) throw std::domain_error("num_samples must be >= 1");
    cfg.validate();
    const double batches =
        std::ceil(static_cast<double>(num_samples) / cfg.batch_size);
    return cfg.local_epochs * batches * cfg.batch_size * cfg.cycles_per_sample /
           cfg.cpu_freq;
}

int predict(const std::vector<double>& weights, const Dataset& data, size_t i) {
    std::vector<double> z;
    logits_for(weights, data, i, z);
    int best = 0;
    for (int c = 1; c < data.num_classes; ++c) {
        if (z[c] > z[best]) best = c; // strict: ties keep the lowest index
    }
    return best;
}

double evaluate(const ModelState& model, const Dataset& test_set) {
    if (test_set.size() == 0) throw std::domain_error("test set is empty");
    size_t correct = 0;
    for (size_t i = 0; i < test_set.size(); ++i) {
        if (predict(model.weights, test_set, i) == test_set.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test_set.size());
}

} // namespace orbitfed
