#pragma once

// Independent reference implementations used as test oracles. Everything
// here recomputes results from first principles and must stay decoupled
// from the implementation paths it checks.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mgcn/kg.hpp"

namespace oracle {

// All triples lying on an undirected path of length <= 2 between main and
// any topic, plus all triples incident to main, by brute-force enumeration
// over triple pairs.
inline std::vector<mgcn::Triple>
subgraph_bruteforce(const std::vector<mgcn::Triple>& triples,
                    const std::string& main,
                    const std::vector<std::string>& topics, int max_hops) {
    auto connects = [](const mgcn::Triple& t, const std::string& a,
                       const std::string& b) {
        return (t.subject == a && t.object == b) ||
               (t.subject == b && t.object == a);
    };
    auto incident = [](const mgcn::Triple& t, const std::string& a) {
        return t.subject == a || t.object == a;
    };

    std::set<std::size_t> keep;
    for (std::size_t i = 0; i < triples.size(); ++i)
        if (incident(triples[i], main))
            keep.insert(i);

    std::set<std::string> nodes;
    for (const mgcn::Triple& t : triples) {
        nodes.insert(t.subject);
        nodes.insert(t.object);
    }
    for (const std::string& topic : topics) {
        if (!nodes.count(topic) || topic == main)
            continue;
        for (std::size_t i = 0; i < triples.size(); ++i)
            if (connects(triples[i], main, topic))
                keep.insert(i);
        if (max_hops < 2)
            continue;
        for (const std::string& mid : nodes) {
            if (mid == main || mid == topic)
                continue;
            for (std::size_t i = 0; i < triples.size(); ++i) {
                if (!connects(triples[i], main, mid))
                    continue;
                for (std::size_t j = 0; j < triples.size(); ++j)
                    if (connects(triples[j], mid, topic)) {
                        keep.insert(i);
                        keep.insert(j);
                    }
            }
        }
    }

    std::vector<mgcn::Triple> out;
    for (std::size_t i = 0; i < triples.size(); ++i)
        if (keep.count(i))
            out.push_back(triples[i]);
    return out;
}

// Dense power iteration, written against the same conventions (distinct
// successor sets, uniform dangling redistribution) from scratch.
inline std::map<std::string, double>
pagerank_dense(const std::vector<mgcn::Triple>& triples, double damping,
               int iters) {
    std::set<std::string> node_set;
    for (const mgcn::Triple& t : triples) {
        node_set.insert(t.subject);
        node_set.insert(t.object);
    }
    std::vector<std::string> nodes(node_set.begin(), node_set.end());
    const std::size_t n = nodes.size();
    auto id = [&](const std::string& s) {
        return static_cast<std::size_t>(
            std::lower_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
    };
    std::vector<std::set<std::size_t>> succ(n);
    for (const mgcn::Triple& t : triples)
        succ[id(t.subject)].insert(id(t.object));

    std::vector<double> r(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < iters; ++it) {
        std::vector<double> next(n, 0.0);
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (succ[i].empty())
                dangling += r[i];
        for (std::size_t i = 0; i < n; ++i) {
            next[i] += (1.0 - damping) / static_cast<double>(n);
            next[i] += damping * dangling / static_cast<double>(n);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : succ[i])
                next[j] +=
                    damping * r[i] / static_cast<double>(succ[i].size());
        r = next;
    }
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < n; ++i)
        out[nodes[i]] = r[i];
    return out;
}

// Random triple sets over small entity/relation alphabets.
inline std::vector<mgcn::Triple> random_triples(std::mt19937_64& rng,
                                                std::size_t max_entities,
                                                std::size_t max_triples) {
    std::uniform_int_distribution<std::size_t> ec(2, max_entities);
    std::uniform_int_distribution<std::size_t> tc(1, max_triples);
    const std::size_t n_ent = ec(rng);
    const std::size_t n_tri = tc(rng);
    std::uniform_int_distribution<std::size_t> ent(0, n_ent - 1);
    std::uniform_int_distribution<std::size_t> rel(0, 4);
    std::vector<mgcn::Triple> out;
    for (std::size_t i = 0; i < n_tri; ++i) {
        std::size_t s = ent(rng);
        std::size_t o = ent(rng);
        if (s == o)
            o = (o + 1) % n_ent;
        out.push_back({"e" + std::to_string(s), "r" + std::to_string(rel(rng)),
                       "e" + std::to_string(o)});
    }
    return out;
}

// Exhaustive search over every sequence that either ends with eos or runs
// to max_len, scored by length-normalized log probability with the same
// tie rules as the beam (lexicographically smaller sequence wins).
template <typename Model>
std::pair<std::vector<std::size_t>, double>
exhaustive_search(const Model& model, std::size_t max_len) {
    std::vector<std::size_t> best;
    double best_score = -1e300;
    bool found = false;

    struct Item {
        std::vector<std::size_t> tokens;
        double logp;
        decltype(model.start()) state;
    };
    std::vector<Item> frontier{{{}, 0.0, model.start()}};
    auto consider = [&](const std::vector<std::size_t>& tokens, double logp) {
        const double score = logp / static_cast<double>(tokens.size());
        std::vector<std::size_t> stripped = tokens;
        if (!stripped.empty() && stripped.back() == model.eos())
            stripped.pop_back();
        if (!found || score > best_score ||
            (score == best_score &&
             std::lexicographical_compare(stripped.begin(), stripped.end(),
                                          best.begin(), best.end()))) {
            best = stripped;
            best_score = score;
            found = true;
        }
    };
    for (std::size_t t = 0; t < max_len; ++t) {
        std::vector<Item> next;
        for (const Item& item : frontier) {
            const std::size_t prev =
                item.tokens.empty() ? model.bos() : item.tokens.back();
            auto [logps, state] = model.step(item.state, prev);
            for (std::size_t v = 0; v < logps.size(); ++v) {
                Item ext{item.tokens, item.logp + logps[v], state};
                ext.tokens.push_back(v);
                if (v == model.eos() || t + 1 == max_len)
                    consider(ext.tokens, ext.logp);
                else
                    next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    return {best, best_score};
}

} // namespace oracle
