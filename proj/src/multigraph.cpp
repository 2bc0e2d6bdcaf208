#include "mgcn/multigraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mgcn/error.hpp"

namespace mgcn {

const std::array<EdgeLabel, kEdgeLabelCount> kAllEdgeLabels = {
    EdgeLabel::self,     EdgeLabel::default1, EdgeLabel::reverse1,
    EdgeLabel::default2, EdgeLabel::reverse2, EdgeLabel::global};

const char* edge_label_name(EdgeLabel label) {
    switch (label) {
    case EdgeLabel::self: return "self";
    case EdgeLabel::default1: return "default1";
    case EdgeLabel::reverse1: return "reverse1";
    case EdgeLabel::default2: return "default2";
    case EdgeLabel::reverse2: return "reverse2";
    case EdgeLabel::global: return "global";
    }
    throw InternalError("edge_label_name: bad label");
}

std::optional<EdgeLabel> edge_label_from_name(const std::string& name) {
    for (EdgeLabel l : kAllEdgeLabels)
        if (name == edge_label_name(l))
            return l;
    return std::nullopt;
}

std::vector<EdgeLabel> MultiGraph::active_labels() const {
    std::vector<EdgeLabel> out;
    for (EdgeLabel l : kAllEdgeLabels)
        if (is_active(l))
            out.push_back(l);
    return out;
}

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::entity: return "entity";
    case NodeKind::relation: return "relation";
    case NodeKind::global: return "global";
    }
    return "?";
}

// Entities in first-occurrence order (subject before object per triple).
std::map<std::string, std::uint32_t>
index_entities(const std::vector<Triple>& triples,
               std::vector<MultiGraphNode>& nodes) {
    std::map<std::string, std::uint32_t> ids;
    for (const Triple& t : triples) {
        for (const std::string* label : {&t.subject, &t.object}) {
            if (!ids.count(*label)) {
                ids[*label] = static_cast<std::uint32_t>(nodes.size());
                nodes.push_back({*label, NodeKind::entity, 0});
            }
        }
    }
    return ids;
}

} // namespace

MultiGraph to_multigraph(const std::vector<Triple>& triples) {
    if (triples.empty())
        throw DataError("to_multigraph: empty triple set");

    MultiGraph mg;
    auto entity_id = index_entities(triples, mg.nodes);

    std::vector<std::uint32_t> relation_node(triples.size());
    for (std::size_t m = 0; m < triples.size(); ++m) {
        relation_node[m] = static_cast<std::uint32_t>(mg.nodes.size());
        mg.nodes.push_back({triples[m].predicate, NodeKind::relation, m});
    }
    const auto g = static_cast<std::uint32_t>(mg.nodes.size());
    mg.nodes.push_back({"<global>", NodeKind::global, 0});

    auto& adj = mg.adjacency;
    for (std::uint32_t i = 0; i < mg.nodes.size(); ++i)
        adj[static_cast<std::size_t>(EdgeLabel::self)].push_back({i, i});

    for (std::size_t m = 0; m < triples.size(); ++m) {
        const std::uint32_t s = entity_id[triples[m].subject];
        const std::uint32_t o = entity_id[triples[m].object];
        const std::uint32_t p = relation_node[m];
        adj[static_cast<std::size_t>(EdgeLabel::default1)].push_back({s, p});
        adj[static_cast<std::size_t>(EdgeLabel::default1)].push_back({p, o});
        adj[static_cast<std::size_t>(EdgeLabel::reverse1)].push_back({p, s});
        adj[static_cast<std::size_t>(EdgeLabel::reverse1)].push_back({o, p});
    }

    // Entity-to-entity edges deduplicate repeated (subject, object) pairs
    // arising from different predicates.
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen_pairs;
    for (const Triple& t : triples) {
        const std::uint32_t s = entity_id[t.subject];
        const std::uint32_t o = entity_id[t.object];
        if (seen_pairs.insert({s, o}).second) {
            adj[static_cast<std::size_t>(EdgeLabel::default2)].push_back({s, o});
            adj[static_cast<std::size_t>(EdgeLabel::reverse2)].push_back({o, s});
        }
    }

    // Global edges are directed from the global node only.
    for (std::uint32_t j = 0; j < g; ++j)
        adj[static_cast<std::size_t>(EdgeLabel::global)].push_back({g, j});
    return mg;
}

LeviGraph to_levi(const std::vector<Triple>& triples) {
    if (triples.empty())
        throw DataError("to_levi: empty triple set");

    LeviGraph lg;
    auto entity_id = index_entities(triples, lg.nodes);
    for (std::size_t m = 0; m < triples.size(); ++m) {
        const auto p = static_cast<std::uint32_t>(lg.nodes.size());
        lg.nodes.push_back({triples[m].predicate, NodeKind::relation, m});
        lg.edges.push_back({entity_id[triples[m].subject], p});
        lg.edges.push_back({p, entity_id[triples[m].object]});
    }
    return lg;
}

MultiGraph drop_graphs(const MultiGraph& mg,
                       const std::set<EdgeLabel>& removed) {
    if (removed.count(EdgeLabel::self))
        throw InternalError("drop_graphs: the self graph cannot be removed");
    MultiGraph out = mg;
    for (EdgeLabel l : removed) {
        out.adjacency[static_cast<std::size_t>(l)].clear();
        out.active[static_cast<std::size_t>(l)] = false;
    }
    return out;
}

std::vector<std::string> validate(const MultiGraph& mg) {
    std::vector<std::string> violations;
    if (mg.nodes.empty()) {
        violations.push_back("global-node: node list is empty");
        return violations;
    }

    std::size_t global_count = 0;
    for (std::size_t i = 0; i < mg.nodes.size(); ++i)
        if (mg.nodes[i].kind == NodeKind::global) {
            ++global_count;
            if (i + 1 != mg.nodes.size())
                violations.push_back("global-node: global at index " +
                                     std::to_string(i) + ", expected " +
                                     std::to_string(mg.nodes.size() - 1));
        }
    if (global_count != 1)
        violations.push_back("global-node: found " +
                             std::to_string(global_count) + " global nodes");

    std::set<std::size_t> origins;
    std::size_t relation_count = 0;
    for (const MultiGraphNode& n : mg.nodes)
        if (n.kind == NodeKind::relation) {
            ++relation_count;
            origins.insert(n.origin_triple);
        }
    if (origins.size() != relation_count)
        violations.push_back(
            "relation-origin: relation nodes share an origin triple");

    const std::size_t n = mg.node_count();
    auto in_range = [n](const Edge& e) { return e.src < n && e.dst < n; };
    for (EdgeLabel l : kAllEdgeLabels)
        for (const Edge& e : mg.edges(l))
            if (!in_range(e))
                violations.push_back(std::string("edge-range: ") +
                                     edge_label_name(l) + " edge (" +
                                     std::to_string(e.src) + ", " +
                                     std::to_string(e.dst) + ") out of range");

    // self graph must be exactly the identity relation
    std::set<Edge> self_edges(mg.edges(EdgeLabel::self).begin(),
                              mg.edges(EdgeLabel::self).end());
    for (std::size_t i = 0; i < n; ++i)
        if (!self_edges.count({static_cast<std::uint32_t>(i),
                               static_cast<std::uint32_t>(i)}))
            violations.push_back("self-graph: missing self loop at node " +
                                 std::to_string(i));
    for (const Edge& e : self_edges)
        if (e.src != e.dst)
            violations.push_back("self-graph: non-loop edge (" +
                                 std::to_string(e.src) + ", " +
                                 std::to_string(e.dst) + ")");

    auto check_transpose = [&](EdgeLabel fwd, EdgeLabel rev) {
        if (!mg.is_active(fwd) && !mg.is_active(rev))
            return;
        std::set<Edge> f(mg.edges(fwd).begin(), mg.edges(fwd).end());
        std::set<Edge> r;
        for (const Edge& e : mg.edges(rev))
            r.insert({e.dst, e.src});
        if (f != r)
            violations.push_back(std::string("transpose: ") +
                                 edge_label_name(rev) + " is not the " +
                                 "transpose of " + edge_label_name(fwd));
    };
    check_transpose(EdgeLabel::default1, EdgeLabel::reverse1);
    check_transpose(EdgeLabel::default2, EdgeLabel::reverse2);

    if (mg.is_active(EdgeLabel::global)) {
        const auto g = static_cast<std::uint32_t>(mg.global_index());
        std::set<Edge> got(mg.edges(EdgeLabel::global).begin(),
                           mg.edges(EdgeLabel::global).end());
        std::set<Edge> want;
        for (std::uint32_t j = 0; j < g; ++j)
            want.insert({g, j});
        if (got != want)
            violations.push_back(
                "global-graph: edges are not exactly {(global, j) : j != "
                "global}");
    }
    return violations;
}

std::string dump_multigraph(const MultiGraph& mg) {
    std::ostringstream os;
    os << "nodes " << mg.node_count() << "\n";
    for (std::size_t i = 0; i < mg.nodes.size(); ++i)
        os << i << '\t' << mg.nodes[i].label << '\t'
           << kind_name(mg.nodes[i].kind) << "\n";
    for (EdgeLabel l : kAllEdgeLabels) {
        os << edge_label_name(l) << ' ' << mg.edges(l).size()
           << (mg.is_active(l) ? "" : " (removed)") << "\n";
        for (const Edge& e : mg.edges(l))
            os << e.src << '\t' << e.dst << "\n";
    }
    return os.str();
}

std::string dump_levi(const LeviGraph& lg) {
    std::ostringstream os;
    os << "nodes " << lg.nodes.size() << "\n";
    for (std::size_t i = 0; i < lg.nodes.size(); ++i)
        os << i << '\t' << lg.nodes[i].label << '\t'
           << kind_name(lg.nodes[i].kind) << "\n";
    os << "edges " << lg.edges.size() << "\n";
    for (const Edge& e : lg.edges)
        os << e.src << '\t' << e.dst << "\n";
    return os.str();
}

} // namespace mgcn
