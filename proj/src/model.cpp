#include "mgcn/model.hpp"

#include <sstream>

#include "mgcn/beam.hpp"
#include "mgcn/error.hpp"

namespace mgcn {

std::set<EdgeLabel> all_edge_labels() {
    return {kAllEdgeLabels.begin(), kAllEdgeLabels.end()};
}

void TrainConfig::check() const {
    if (hidden < 1 || layers < 1 || batch_size < 1 || patience < 1 ||
        beam < 1 || max_epochs < 1 || max_len < 1)
        throw DataError("config: hidden, layers, batch, beam, patience, "
                        "max_epochs and max_len must all be >= 1");
    if (!graphs.count(EdgeLabel::self))
        throw DataError("config: the self graph cannot be ablated");
    if (learning_rate <= 0.0)
        throw DataError("config: learning rate must be positive");
    if (min_freq < 1)
        throw DataError("config: min_freq must be >= 1");
}

std::string graphs_to_string(const std::set<EdgeLabel>& graphs) {
    std::string out;
    for (EdgeLabel l : kAllEdgeLabels)
        if (graphs.count(l)) {
            if (!out.empty())
                out += ',';
            out += edge_label_name(l);
        }
    return out;
}

std::set<EdgeLabel> graphs_from_string(const std::string& csv) {
    std::set<EdgeLabel> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        auto label = edge_label_from_name(item);
        if (!label)
            throw DataError("unknown graph label '" + item + "'");
        out.insert(*label);
    }
    if (out.empty())
        throw DataError("empty graph set");
    return out;
}

Model::Model(TrainConfig config, Vocabulary vocab)
    : config_(std::move(config)), vocab_(std::move(vocab)) {
    config_.check();
    std::mt19937_64 rng(config_.seed);
    const std::size_t d = config_.hidden;
    const double r = config_.init_range;

    Parameter& emb =
        store_.create("embeddings", {vocab_.size(), d}, rng, r);

    for (std::size_t k = 0; k < config_.layers; ++k) {
        MgcnLayerParams layer;
        layer.kind = config_.aggregation;
        const std::string prefix = "enc.l" + std::to_string(k) + ".";
        for (EdgeLabel l : kAllEdgeLabels) {
            if (!config_.graphs.count(l))
                continue;
            GraphEncoderParams enc;
            enc.weight = &store_.create(prefix + edge_label_name(l) + ".W",
                                        {d, d}, rng, r);
            enc.bias = &store_.create(prefix + edge_label_name(l) + ".b", {d},
                                      rng, r);
            layer.per_graph.emplace_back(l, enc);
        }
        if (config_.aggregation == Aggregation::conv) {
            layer.conv_weight = &store_.create(
                prefix + "conv.W", {layer.per_graph.size(), d}, rng, r);
            layer.conv_bias = &store_.create(prefix + "conv.b", {d}, rng, r);
        }
        layers_.push_back(std::move(layer));
    }

    const std::size_t ctx = config_.layers * d;
    const std::size_t in1 = config_.input_feeding ? d + ctx : d;
    decoder_.embeddings = &emb;
    decoder_.layer1.w_input = &store_.create("dec.l1.Wx", {in1, 4 * d}, rng, r);
    decoder_.layer1.w_hidden = &store_.create("dec.l1.Wh", {d, 4 * d}, rng, r);
    decoder_.layer1.bias = &store_.create("dec.l1.b", {4 * d}, rng, r);
    decoder_.layer2.w_input = &store_.create("dec.l2.Wx", {d, 4 * d}, rng, r);
    decoder_.layer2.w_hidden = &store_.create("dec.l2.Wh", {d, 4 * d}, rng, r);
    decoder_.layer2.bias = &store_.create("dec.l2.b", {4 * d}, rng, r);
    decoder_.attn_weight = &store_.create("dec.attn.W", {d, ctx}, rng, r);
    decoder_.combine_weight =
        &store_.create("dec.comb.W", {d + ctx, d}, rng, r);
    decoder_.combine_bias = &store_.create("dec.comb.b", {d}, rng, r);
    decoder_.hidden = d;
    decoder_.ctx_width = ctx;
    decoder_.input_feeding = config_.input_feeding;
}

MultiGraph Model::transform(const std::vector<Triple>& triples) const {
    MultiGraph mg = to_multigraph(triples);
    std::set<EdgeLabel> removed;
    for (EdgeLabel l : kAllEdgeLabels)
        if (!config_.graphs.count(l))
            removed.insert(l);
    return removed.empty() ? mg : drop_graphs(mg, removed);
}

Var Model::encode(const MultiGraph& mg) const {
    Var h0 = init_node_embeddings(mg, decoder_.embeddings->var(), vocab_);
    return stack_layers(mg, h0, layers_, config_.degree_norm);
}

std::vector<std::size_t>
Model::token_ids(const std::vector<std::string>& tokens) const {
    std::vector<std::size_t> ids;
    ids.reserve(tokens.size());
    for (const std::string& t : tokens)
        ids.push_back(vocab_.lookup(t));
    return ids;
}

Var Model::loss(const MultiGraph& mg,
                const std::vector<std::size_t>& reference_ids) const {
    return nll_loss(decoder_, reference_ids, encode(mg));
}

namespace {

// Adapter between the decoder and the generic beam search. States carry
// detached tensors so per-step graphs stay independent.
struct BeamModel {
    const DecoderParams& params;
    const Var& h_final;

    std::size_t vocab_size() const {
        return params.embeddings->tensor().rows();
    }
    std::size_t bos() const { return Vocabulary::kBos; }
    std::size_t eos() const { return Vocabulary::kEos; }
    DecoderState start() const { return initial_decoder_state(params); }
    std::pair<std::vector<double>, DecoderState>
    step(const DecoderState& state, std::size_t prev) const {
        DecodeStep out = decode_step(params, state, prev, h_final);
        return {log_softmax_values(out.logits.value()),
                detach_state(out.state)};
    }
};

} // namespace

std::vector<std::string> Model::generate(const MultiGraph& mg,
                                         std::size_t beam,
                                         std::size_t max_len) const {
    Var h_final = encode(mg);
    BeamModel bm{decoder_, h_final};
    BeamResult result = beam_search(bm, beam, max_len);
    std::vector<std::string> tokens;
    tokens.reserve(result.tokens.size());
    for (std::size_t id : result.tokens)
        tokens.push_back(vocab_.token(id));
    return tokens;
}

} // namespace mgcn
