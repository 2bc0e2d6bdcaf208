#pragma once

#include <functional>

#include "mgcn/checkpoint.hpp"

namespace mgcn {

struct EpochLog {
    std::size_t epoch = 0;
    double train_perplexity = 0.0;
    double val_perplexity = 0.0;
};

using EpochCallback = std::function<void(const EpochLog&)>;

struct TrainResult {
    ModelCheckpoint checkpoint; // parameters of the best-perplexity epoch
    std::vector<EpochLog> epochs;
    std::vector<std::string> warnings;
};

// Teacher-forced training with per-token-averaged batch loss, Adam updates
// and patience-based early stopping on validation perplexity. Instances
// with an empty triple set are skipped with a warning. Deterministic given
// the config seed.
TrainResult train(const TrainConfig& config,
                  const std::vector<Instance>& train_instances,
                  const std::vector<Instance>& valid_instances,
                  const EpochCallback& on_epoch = nullptr);

// exp(total NLL / total token count), end-of-sequence tokens included.
double perplexity(const Model& model, const std::vector<Instance>& instances);

} // namespace mgcn
