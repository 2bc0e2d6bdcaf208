#include "mgcn/subgraph.hpp"

#include <set>

#include "mgcn/error.hpp"

namespace mgcn {

namespace {

// The endpoint of `t` opposite to `label`, or empty if `label` is not an
// endpoint. A self-loop's opposite endpoint is the label itself.
const std::string* other_end(const Triple& t, const std::string& label) {
    if (t.subject == label)
        return &t.object;
    if (t.object == label)
        return &t.subject;
    return nullptr;
}

} // namespace

SubgraphResult extract_subgraph(const KnowledgeGraph& kg,
                                const std::string& main,
                                const std::vector<std::string>& topics,
                                int max_hops) {
    if (!kg.has_entity(main))
        throw DataError("extract_subgraph: main entity '" + main +
                        "' not in graph");
    if (max_hops != 1 && max_hops != 2)
        throw InternalError("extract_subgraph: max_hops must be 1 or 2");

    SubgraphResult result;
    std::set<std::size_t> selected;

    // Neighbor triples of the main entity, both roles.
    for (std::size_t i : kg.incident(main))
        selected.insert(i);

    for (const std::string& topic : topics) {
        if (!kg.has_entity(topic)) {
            result.warnings.push_back("unknown topic entity '" + topic + "'");
            continue;
        }
        if (topic == main)
            continue;
        // 1-hop: direct edges between main and topic, either orientation.
        for (std::size_t i : kg.incident(main)) {
            const std::string* x = other_end(kg.triples()[i], main);
            if (x && *x == topic)
                selected.insert(i);
        }
        if (max_hops < 2)
            continue;
        // 2-hop: main -- x -- topic over a proper intermediate node.
        for (std::size_t i : kg.incident(main)) {
            const std::string* x = other_end(kg.triples()[i], main);
            if (!x || *x == main || *x == topic)
                continue;
            for (std::size_t j : kg.incident(*x)) {
                const std::string* y = other_end(kg.triples()[j], *x);
                if (y && *y == topic) {
                    selected.insert(i);
                    selected.insert(j);
                }
            }
        }
    }

    for (std::size_t i = 0; i < kg.triple_count(); ++i)
        if (selected.count(i))
            result.triples.push_back(kg.triples()[i]);
    return result;
}

} // namespace mgcn
