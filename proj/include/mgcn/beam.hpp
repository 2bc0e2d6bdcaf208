#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mgcn/error.hpp"

namespace mgcn {

// Best decoded sequence (end-of-sequence stripped) with its
// length-normalized log probability.
struct BeamResult {
    std::vector<std::size_t> tokens;
    double score = 0.0;
};

// Breadth-limited best-first decoding. The model supplies:
//   std::size_t vocab_size() const;
//   std::size_t bos() const;  std::size_t eos() const;
//   State start() const;
//   std::pair<std::vector<double>, State> step(const State&, std::size_t
//       prev_token) const;   // log probabilities over the vocabulary
//
// Hypotheses end at end-of-sequence or max_len. Final selection uses
// log probability divided by token count (end-of-sequence included);
// ties break toward the lexicographically smaller token sequence, which
// prefers lower token indices and then shorter hypotheses.
template <typename Model>
BeamResult beam_search(const Model& model, std::size_t beam,
                       std::size_t max_len) {
    if (beam < 1)
        throw InternalError("beam_search: beam must be >= 1");
    using State = decltype(model.start());

    struct Hyp {
        std::vector<std::size_t> tokens;
        double logp = 0.0;
        State state;
    };

    std::vector<Hyp> live{{{}, 0.0, model.start()}};
    std::vector<Hyp> finished;

    for (std::size_t t = 0; t < max_len && !live.empty(); ++t) {
        struct Cand {
            double logp;
            std::size_t parent;
            std::size_t token;
        };
        std::vector<Cand> cands;
        std::vector<State> next_states;
        cands.reserve(live.size() * model.vocab_size());
        next_states.reserve(live.size());
        for (std::size_t p = 0; p < live.size(); ++p) {
            const std::size_t prev =
                live[p].tokens.empty() ? model.bos() : live[p].tokens.back();
            auto [logps, state] = model.step(live[p].state, prev);
            next_states.push_back(std::move(state));
            for (std::size_t v = 0; v < logps.size(); ++v)
                cands.push_back({live[p].logp + logps[v], p, v});
        }
        const std::size_t keep = std::min<std::size_t>(beam, cands.size());
        std::partial_sort(cands.begin(),
                          cands.begin() + static_cast<long>(keep), cands.end(),
                          [&](const Cand& a, const Cand& b) {
                              if (a.logp != b.logp)
                                  return a.logp > b.logp;
                              // lower token index, then earlier parent:
                              // a deterministic total order
                              if (a.token != b.token)
                                  return a.token < b.token;
                              return a.parent < b.parent;
                          });
        std::vector<Hyp> next;
        for (std::size_t i = 0; i < keep; ++i) {
            Hyp h;
            h.tokens = live[cands[i].parent].tokens;
            h.tokens.push_back(cands[i].token);
            h.logp = cands[i].logp;
            h.state = next_states[cands[i].parent];
            if (cands[i].token == model.eos() || t + 1 == max_len)
                finished.push_back(std::move(h));
            else
                next.push_back(std::move(h));
        }
        live = std::move(next);
    }
    for (Hyp& h : live)
        finished.push_back(std::move(h)); // only when live dried up early

    const Hyp* best = nullptr;
    double best_score = 0.0;
    for (const Hyp& h : finished) {
        if (h.tokens.empty())
            continue;
        const double score = h.logp / static_cast<double>(h.tokens.size());
        if (!best || score > best_score ||
            (score == best_score &&
             std::lexicographical_compare(h.tokens.begin(), h.tokens.end(),
                                          best->tokens.begin(),
                                          best->tokens.end()))) {
            best = &h;
            best_score = score;
        }
    }
    if (!best)
        return {};

    BeamResult result;
    result.tokens = best->tokens;
    if (!result.tokens.empty() && result.tokens.back() == model.eos())
        result.tokens.pop_back();
    result.score = best_score;
    return result;
}

} // namespace mgcn
