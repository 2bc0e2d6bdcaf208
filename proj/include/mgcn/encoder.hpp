#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mgcn/multigraph.hpp"
#include "mgcn/params.hpp"
#include "mgcn/preprocess.hpp"

namespace mgcn {

enum class Aggregation { sum, avg, conv };

const char* aggregation_name(Aggregation a);
std::optional<Aggregation> aggregation_from_name(const std::string& name);

// A single per-graph encoder: one square weight matrix and one bias. The
// multi-graph already factors direction into separate graphs, so no
// internal direction split is needed here.
struct GraphEncoderParams {
    Parameter* weight = nullptr; // (d, d)
    Parameter* bias = nullptr;   // (d)
};

// Direction-split weights for encoding an untransformed directed graph
// (the Levi baseline): in-edge, out-edge and self each get their own pair.
struct DirectionalEncoderParams {
    GraphEncoderParams in;
    GraphEncoderParams out;
    GraphEncoderParams self;
};

struct MgcnLayerParams {
    // one encoder per present (possibly ablated) graph, in canonical order
    std::vector<std::pair<EdgeLabel, GraphEncoderParams>> per_graph;
    Aggregation kind = Aggregation::sum;
    Parameter* conv_weight = nullptr; // (m, d) when kind == conv
    Parameter* conv_bias = nullptr;   // (d)
};

// Row r = mean of the embeddings of the label tokens of node r; unknown
// words fall back to the unk embedding and the global node uses the
// reserved global embedding.
Var init_node_embeddings(const MultiGraph& mg, const Var& embeddings,
                         const Vocabulary& vocab);

// h_j = ReLU(sum over incoming edges (i, j) of (W x_i + b)). A node with no
// incoming edges in this graph yields the zero vector: the sum is empty and
// the bias fires once per received message. With degree_norm the
// pre-activation sum is divided by the in-degree.
Var basic_encode(const EdgeList& edges, const Var& h,
                 const GraphEncoderParams& params, bool degree_norm = false);

// The same update over a plain directed graph with neighbors partitioned
// into the three directions, each with its own weight and bias.
Var levi_encode(const EdgeList& directed_edges, const Var& h,
                const DirectionalEncoderParams& params);

// Runs every present per-graph encoder and merges with the configured
// aggregation: sum, avg (sum / m), or the learned per-(graph, channel)
// linear combination.
Var mgcn_layer(const MultiGraph& mg, const Var& h,
               const MgcnLayerParams& params, bool degree_norm = false);

// h_final: column-wise concatenation of the n layer outputs (the input
// representation h0 is excluded).
Var stack_layers(const MultiGraph& mg, const Var& h0,
                 std::span<const MgcnLayerParams> layers,
                 bool degree_norm = false);

} // namespace mgcn
