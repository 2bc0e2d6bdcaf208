#include "mgcn/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "mgcn/error.hpp"
#include "mgcn/preprocess.hpp"

namespace mgcn {

DecoderState initial_decoder_state(const DecoderParams& params) {
    DecoderState s;
    s.h1 = Var::constant(Tensor({1, params.hidden}));
    s.c1 = Var::constant(Tensor({1, params.hidden}));
    s.h2 = Var::constant(Tensor({1, params.hidden}));
    s.c2 = Var::constant(Tensor({1, params.hidden}));
    s.context = Var::constant(Tensor({1, params.ctx_width}));
    return s;
}

DecoderState detach_state(const DecoderState& state) {
    DecoderState s;
    s.h1 = Var::constant(state.h1.value());
    s.c1 = Var::constant(state.c1.value());
    s.h2 = Var::constant(state.h2.value());
    s.c2 = Var::constant(state.c2.value());
    s.context = Var::constant(state.context.value());
    return s;
}

std::pair<Var, Var> lstm_cell(const LstmParams& params, const Var& x,
                              const Var& h, const Var& c) {
    const std::size_t d = h.value().cols();
    Var gates = add(matmul(x, params.w_input->var()),
                    matmul(h, params.w_hidden->var()));
    gates = add(gates, reshape(params.bias->var(), {1, 4 * d}));
    Var in_gate = sigmoid(slice_cols(gates, 0, d));
    Var forget_gate = sigmoid(slice_cols(gates, d, d));
    Var cell_in = tanh_op(slice_cols(gates, 2 * d, d));
    Var out_gate = sigmoid(slice_cols(gates, 3 * d, d));
    Var c_next = add(mul(forget_gate, c), mul(in_gate, cell_in));
    Var h_next = mul(out_gate, tanh_op(c_next));
    return {h_next, c_next};
}

DecodeStep decode_step(const DecoderParams& params, const DecoderState& state,
                       std::size_t prev_token, const Var& h_final) {
    if (prev_token >= params.embeddings->tensor().rows())
        throw DataError("decode_step: token index " +
                        std::to_string(prev_token) + " outside vocabulary of " +
                        std::to_string(params.embeddings->tensor().rows()));
    if (h_final.value().cols() != params.ctx_width)
        throw InternalError("decode_step: h_final width " +
                            h_final.value().shape_str() + " vs expected " +
                            std::to_string(params.ctx_width));

    Var x = gather_rows(params.embeddings->var(), {prev_token});
    if (params.input_feeding)
        x = concat({x, state.context}, 1);

    DecodeStep out;
    auto [h1, c1] = lstm_cell(params.layer1, x, state.h1, state.c1);
    auto [h2, c2] = lstm_cell(params.layer2, h1, state.h2, state.c2);

    Var scores =
        matmul(matmul(h2, params.attn_weight->var()), transpose(h_final));
    out.attention = softmax(scores);
    Var context = weighted_row_sum(out.attention, h_final);

    Var combined = matmul(concat({h2, context}, 1),
                          params.combine_weight->var());
    combined = add(combined,
                   reshape(params.combine_bias->var(), {1, params.hidden}));
    combined = tanh_op(combined);
    out.logits = matmul(combined, transpose(params.embeddings->var()));
    for (std::size_t v = 0; v < out.logits.value().size(); ++v)
        if (!std::isfinite(out.logits.value()[v]))
            throw InternalError("decode_step: non-finite logits, the "
                                "decoder state overflowed");
    out.state = {h1, c1, h2, c2, context};
    return out;
}

Var nll_loss(const DecoderParams& params,
             const std::vector<std::size_t>& reference, const Var& h_final) {
    if (reference.empty())
        throw DataError("nll_loss: empty reference");
    std::vector<std::size_t> gold = reference;
    gold.push_back(Vocabulary::kEos);

    DecoderState state = initial_decoder_state(params);
    std::size_t prev = Vocabulary::kBos;
    Var loss;
    for (std::size_t y : gold) {
        DecodeStep step = decode_step(params, state, prev, h_final);
        Var ce = cross_entropy(step.logits, y);
        loss = loss.defined() ? add(loss, ce) : ce;
        state = step.state;
        prev = y;
    }
    return loss;
}

std::vector<double> log_softmax_values(const Tensor& logits) {
    const std::size_t v = logits.size();
    const double* x = logits.data();
    const double mx = *std::max_element(x, x + v);
    double sum = 0.0;
    for (std::size_t i = 0; i < v; ++i)
        sum += std::exp(x[i] - mx);
    const double lse = mx + std::log(sum);
    std::vector<double> out(v);
    for (std::size_t i = 0; i < v; ++i)
        out[i] = x[i] - lse;
    return out;
}

} // namespace mgcn
