#include "mgcn/encoder.hpp"

#include "mgcn/error.hpp"

namespace mgcn {

const char* aggregation_name(Aggregation a) {
    switch (a) {
    case Aggregation::sum: return "sum";
    case Aggregation::avg: return "avg";
    case Aggregation::conv: return "conv";
    }
    throw InternalError("aggregation_name: bad kind");
}

std::optional<Aggregation> aggregation_from_name(const std::string& name) {
    if (name == "sum")
        return Aggregation::sum;
    if (name == "avg")
        return Aggregation::avg;
    if (name == "conv")
        return Aggregation::conv;
    return std::nullopt;
}

Var init_node_embeddings(const MultiGraph& mg, const Var& embeddings,
                         const Vocabulary& vocab) {
    std::vector<Var> rows;
    rows.reserve(mg.node_count());
    for (const MultiGraphNode& node : mg.nodes) {
        if (node.kind == NodeKind::global) {
            rows.push_back(gather_rows(embeddings, {Vocabulary::kGlobal}));
            continue;
        }
        std::vector<std::size_t> ids;
        for (const std::string& tok : label_tokens(node.label))
            ids.push_back(vocab.lookup(tok));
        if (ids.empty())
            ids.push_back(Vocabulary::kUnk);
        Var gathered = gather_rows(embeddings, std::move(ids));
        rows.push_back(gathered.value().rows() == 1 ? gathered
                                                    : mean_rows(gathered));
    }
    return concat(rows, 0);
}

namespace {

// deg(j) * b as an (n, d) tensor; deg is a constant so this reduces to a
// plain matmul against the reshaped bias row.
Var degree_bias(const EdgeList& edges, std::size_t n, const Var& bias) {
    Tensor deg({n, 1});
    for (const Edge& e : edges)
        deg[e.dst] += 1.0;
    const std::size_t d = bias.value().size();
    return matmul(Var::constant(std::move(deg)), reshape(bias, {1, d}));
}

Var messages(const EdgeList& edges, const Var& h,
             const GraphEncoderParams& params) {
    Var projected = matmul(h, transpose(params.weight->var()));
    Var summed = sparse_adj_matmul(edges, projected);
    return add(summed, degree_bias(edges, h.value().rows(), params.bias->var()));
}

} // namespace

Var basic_encode(const EdgeList& edges, const Var& h,
                 const GraphEncoderParams& params, bool degree_norm) {
    Var pre = messages(edges, h, params);
    if (degree_norm) {
        const std::size_t n = h.value().rows(), d = h.value().cols();
        Tensor inv({n, d}, 1.0);
        std::vector<double> deg(n, 0.0);
        for (const Edge& e : edges)
            deg[e.dst] += 1.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < d; ++c)
                inv.at(r, c) = deg[r] > 0.0 ? 1.0 / deg[r] : 1.0;
        pre = mul(pre, Var::constant(std::move(inv)));
    }
    return relu(pre);
}

Var levi_encode(const EdgeList& directed_edges, const Var& h,
                const DirectionalEncoderParams& params) {
    EdgeList transposed;
    transposed.reserve(directed_edges.size());
    for (const Edge& e : directed_edges)
        transposed.push_back({e.dst, e.src});
    EdgeList self_loops;
    for (std::uint32_t i = 0; i < h.value().rows(); ++i)
        self_loops.push_back({i, i});

    Var pre = add(messages(directed_edges, h, params.in),
                  messages(transposed, h, params.out));
    pre = add(pre, messages(self_loops, h, params.self));
    return relu(pre);
}

Var mgcn_layer(const MultiGraph& mg, const Var& h,
               const MgcnLayerParams& params, bool degree_norm) {
    if (params.per_graph.empty())
        throw InternalError("mgcn_layer: empty graph set");

    std::vector<Var> per_graph;
    per_graph.reserve(params.per_graph.size());
    for (const auto& [label, enc] : params.per_graph)
        per_graph.push_back(
            basic_encode(mg.edges(label), h, enc, degree_norm));

    switch (params.kind) {
    case Aggregation::sum:
    case Aggregation::avg: {
        Var acc = per_graph[0];
        for (std::size_t i = 1; i < per_graph.size(); ++i)
            acc = add(acc, per_graph[i]);
        if (params.kind == Aggregation::avg)
            acc = div_scalar(acc, static_cast<double>(per_graph.size()));
        return acc;
    }
    case Aggregation::conv:
        if (!params.conv_weight || !params.conv_bias)
            throw InternalError("mgcn_layer: conv aggregation without "
                                "convolution parameters");
        return conv_stack(params.conv_weight->var(), per_graph,
                          params.conv_bias->var());
    }
    throw InternalError("mgcn_layer: bad aggregation kind");
}

Var stack_layers(const MultiGraph& mg, const Var& h0,
                 std::span<const MgcnLayerParams> layers, bool degree_norm) {
    if (layers.empty())
        throw InternalError("stack_layers: need at least one layer");
    std::vector<Var> outputs;
    outputs.reserve(layers.size());
    Var h = h0;
    for (const MgcnLayerParams& layer : layers) {
        h = mgcn_layer(mg, h, layer, degree_norm);
        outputs.push_back(h);
    }
    return outputs.size() == 1 ? outputs[0] : concat(outputs, 1);
}

} // namespace mgcn
