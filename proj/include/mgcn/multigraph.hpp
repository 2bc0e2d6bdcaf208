#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgcn/autodiff.hpp"
#include "mgcn/kg.hpp"

namespace mgcn {

// The six labeled graphs of the multi-graph transformation.
enum class EdgeLabel : std::uint8_t {
    self = 0,
    default1 = 1, // entity -> relation node -> entity, original orientation
    reverse1 = 2, // transpose of default1
    default2 = 3, // subject entity -> object entity
    reverse2 = 4, // transpose of default2
    global = 5,   // global node -> every other node
};

constexpr std::size_t kEdgeLabelCount = 6;
extern const std::array<EdgeLabel, kEdgeLabelCount> kAllEdgeLabels;

const char* edge_label_name(EdgeLabel label);
std::optional<EdgeLabel> edge_label_from_name(const std::string& name);

enum class NodeKind : std::uint8_t { entity, relation, global };

struct MultiGraphNode {
    std::string label;
    NodeKind kind = NodeKind::entity;
    // index of the originating triple, relation nodes only
    std::size_t origin_triple = 0;
};

// Unified node list (entities in first-occurrence order, one relation node
// per triple in triple order, the global node last) with one edge list per
// label. Ablated labels keep an empty edge list and are marked inactive.
struct MultiGraph {
    std::vector<MultiGraphNode> nodes;
    std::array<EdgeList, kEdgeLabelCount> adjacency;
    std::array<bool, kEdgeLabelCount> active{true, true, true,
                                             true, true, true};

    std::size_t node_count() const { return nodes.size(); }
    std::size_t global_index() const { return nodes.size() - 1; }
    const EdgeList& edges(EdgeLabel label) const {
        return adjacency[static_cast<std::size_t>(label)];
    }
    bool is_active(EdgeLabel label) const {
        return active[static_cast<std::size_t>(label)];
    }
    std::vector<EdgeLabel> active_labels() const;
};

// Entities plus one relation node per triple, connected (s -> p) and
// (p -> o) per triple; no entity-to-entity edges and no global node.
struct LeviGraph {
    std::vector<MultiGraphNode> nodes;
    EdgeList edges;
};

MultiGraph to_multigraph(const std::vector<Triple>& triples);
LeviGraph to_levi(const std::vector<Triple>& triples);

// Empties the adjacency of the removed labels; the node list is unchanged.
// Removing `self` is an error.
MultiGraph drop_graphs(const MultiGraph& mg, const std::set<EdgeLabel>& removed);

// Empty iff every structural invariant holds; each violation names the
// invariant and the offending indices.
std::vector<std::string> validate(const MultiGraph& mg);

// Node table followed by per-label edge lists; stable across runs.
std::string dump_multigraph(const MultiGraph& mg);
std::string dump_levi(const LeviGraph& lg);

} // namespace mgcn
