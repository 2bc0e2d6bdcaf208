#pragma once

#include <vector>

#include "mgcn/params.hpp"

namespace mgcn {

struct LstmParams {
    Parameter* w_input = nullptr;  // (input width, 4d), gate order i f g o
    Parameter* w_hidden = nullptr; // (d, 4d)
    Parameter* bias = nullptr;     // (4d)
};

// The decoder's parameter set. `embeddings` is the same storage used for
// node initialization and as the output projection (weight tying).
struct DecoderParams {
    Parameter* embeddings = nullptr;    // (|V|, d)
    LstmParams layer1;
    LstmParams layer2;
    Parameter* attn_weight = nullptr;   // (d, ctx_width)
    Parameter* combine_weight = nullptr; // (d + ctx_width, d)
    Parameter* combine_bias = nullptr;  // (d)
    std::size_t hidden = 0;
    std::size_t ctx_width = 0; // node representation width (n * d)
    bool input_feeding = true;
};

struct DecoderState {
    Var h1, c1, h2, c2;
    Var context; // previous attention context, (1, ctx_width)
};

struct DecodeStep {
    Var logits;    // (1, |V|)
    DecoderState state;
    Var attention; // (1, node count), sums to 1
};

DecoderState initial_decoder_state(const DecoderParams& params);

// Replaces graph-holding state tensors by fresh constants; used by beam
// search so per-step graphs do not chain together.
DecoderState detach_state(const DecoderState& state);

std::pair<Var, Var> lstm_cell(const LstmParams& params, const Var& x,
                              const Var& h, const Var& c);

// One teacher-forcing / decoding step: embed the previous token, run both
// recurrent layers, attend over the node rows of h_final with a bilinear
// score, and project the combined state through the tied embedding table.
DecodeStep decode_step(const DecoderParams& params, const DecoderState& state,
                       std::size_t prev_token, const Var& h_final);

// Sum of per-step cross-entropies over the reference plus the final
// end-of-sequence step.
Var nll_loss(const DecoderParams& params,
             const std::vector<std::size_t>& reference, const Var& h_final);

// log softmax of a single-row logits tensor, computed outside the graph.
std::vector<double> log_softmax_values(const Tensor& logits);

} // namespace mgcn
