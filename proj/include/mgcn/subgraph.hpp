#pragma once

#include "mgcn/kg.hpp"

namespace mgcn {

struct SubgraphResult {
    std::vector<Triple> triples; // in the graph's insertion order
    std::vector<std::string> warnings;
};

// Entity-centric extraction: all triples incident to `main` plus every
// triple on an undirected connectivity path of length <= max_hops between
// `main` and any topic entity. Intermediate nodes of 2-hop paths may be any
// node other than the two endpoints. Unknown topic entities are skipped
// with a warning; an unknown main entity is an error.
SubgraphResult extract_subgraph(const KnowledgeGraph& kg,
                                const std::string& main,
                                const std::vector<std::string>& topics,
                                int max_hops = 2);

} // namespace mgcn
