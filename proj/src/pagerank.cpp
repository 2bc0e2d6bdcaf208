#include "mgcn/pagerank.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "mgcn/error.hpp"

namespace mgcn {

std::map<std::string, double> pagerank(const KnowledgeGraph& kg,
                                       double damping, double tolerance,
                                       int max_iters) {
    if (kg.triple_count() == 0)
        throw DataError("pagerank: empty graph");

    const std::vector<std::string> labels = kg.entities();
    const std::size_t n = labels.size();
    std::unordered_map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < n; ++i)
        id[labels[i]] = i;

    std::vector<std::set<std::size_t>> succ(n);
    for (const Triple& t : kg.triples())
        succ[id[t.subject]].insert(id[t.object]);

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    for (int iter = 0; iter < max_iters; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (succ[i].empty())
                dangling += rank[i];
        const double base =
            (1.0 - damping) / static_cast<double>(n) +
            damping * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (std::size_t i = 0; i < n; ++i) {
            if (succ[i].empty())
                continue;
            const double share =
                damping * rank[i] / static_cast<double>(succ[i].size());
            for (std::size_t j : succ[i])
                next[j] += share;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            delta += std::fabs(next[i] - rank[i]);
        rank.swap(next);
        if (delta < tolerance)
            break;
    }

    std::map<std::string, double> out;
    for (std::size_t i = 0; i < n; ++i)
        out[labels[i]] = rank[i];
    return out;
}

} // namespace mgcn
