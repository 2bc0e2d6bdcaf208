#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "mgcn/decoder.hpp"
#include "mgcn/encoder.hpp"

namespace mgcn {

std::set<EdgeLabel> all_edge_labels();

struct TrainConfig {
    std::size_t hidden = 360;
    std::size_t layers = 6;
    Aggregation aggregation = Aggregation::sum;
    double learning_rate = 0.0003;
    std::size_t batch_size = 16;
    std::size_t beam = 10;
    std::uint64_t seed = 1;
    std::size_t patience = 5;
    double min_delta = 1e-4;
    std::size_t max_epochs = 200;
    std::set<EdgeLabel> graphs = all_edge_labels();
    bool delex = false;
    bool input_feeding = true;
    bool degree_norm = false;
    int min_freq = 1;
    std::size_t max_len = 100;
    double init_range = 0.08;
    double grad_clip = 0.0; // global max-norm, 0 disables

    void check() const; // throws DataError on out-of-range values

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

std::string graphs_to_string(const std::set<EdgeLabel>& graphs);
std::set<EdgeLabel> graphs_from_string(const std::string& csv);

// The full encoder-decoder model: a tied embedding table, `layers` stacked
// multi-graph convolution layers over the configured graph set, and the
// two-layer attention decoder.
class Model {
public:
    Model(TrainConfig config, Vocabulary vocab);

    const TrainConfig& config() const { return config_; }
    const Vocabulary& vocab() const { return vocab_; }
    ParameterStore& params() { return store_; }
    const ParameterStore& params() const { return store_; }
    const DecoderParams& decoder() const { return decoder_; }
    std::span<const MgcnLayerParams> encoder_layers() const {
        return layers_;
    }

    // Multi-graph of an instance's triples with the configured ablation
    // applied.
    MultiGraph transform(const std::vector<Triple>& triples) const;

    Var encode(const MultiGraph& mg) const; // h_final, (nodes, layers * d)

    std::vector<std::size_t> token_ids(
        const std::vector<std::string>& tokens) const;

    // Teacher-forced loss of one instance's reference against its graph.
    Var loss(const MultiGraph& mg,
             const std::vector<std::size_t>& reference_ids) const;

    // Beam-searched token strings for one graph.
    std::vector<std::string> generate(const MultiGraph& mg,
                                      std::size_t beam,
                                      std::size_t max_len) const;

private:
    TrainConfig config_;
    Vocabulary vocab_;
    ParameterStore store_;
    std::vector<MgcnLayerParams> layers_;
    DecoderParams decoder_;
};

} // namespace mgcn
