#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mgcn/model.hpp"

namespace mgcn {

constexpr std::uint32_t kCheckpointVersion = 1;

// Versioned serialization of configuration, vocabulary and all named
// parameter tensors. A save/load round trip is bitwise exact.
struct ModelCheckpoint {
    std::uint32_t version = kCheckpointVersion;
    TrainConfig config;
    Vocabulary vocab;
    std::vector<std::pair<std::string, Tensor>> tensors; // creation order
    std::uint64_t step = 0;
    double best_val_perplexity = 0.0;

    static ModelCheckpoint from_model(const Model& model, std::uint64_t step,
                                      double best_val_perplexity);
    Model to_model() const;
};

// Little-endian binary: "MGCN", version u32, u64-length-prefixed JSON header
// (config, vocab, step, best perplexity, tensor index with shapes and byte
// offsets into the payload), then raw 64-bit-real payloads in index order.
// Writes are atomic (temp file + rename).
void save_checkpoint(const ModelCheckpoint& cp, const std::string& path);
ModelCheckpoint load_checkpoint(const std::string& path);

// Config <-> JSON text used inside the checkpoint header.
std::string config_to_json(const TrainConfig& config);
TrainConfig config_from_json(const std::string& json_text);

} // namespace mgcn
