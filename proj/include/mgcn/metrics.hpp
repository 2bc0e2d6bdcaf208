#pragma once

#include <string>
#include <vector>

namespace mgcn {

using TokenSeq = std::vector<std::string>;

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Corpus BLEU: clipped n-gram precisions pooled over the corpus, geometric
// mean over n = 1..max_n, brevity penalty exp(1 - r/c) when c < r. Without
// smoothing any zero pooled precision yields 0; with `smooth`, add-one
// smoothing is applied to the n > 1 counts. Single reference per candidate.
double bleu(const std::vector<TokenSeq>& candidates,
            const std::vector<TokenSeq>& references, int max_n = 4,
            bool smooth = false);

RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference,
                   int n);
RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference);

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

struct EvalReport {
    double bleu_score = 0.0; // [0, 100]
    RougeScore rouge1, rouge2, rougeL; // corpus = mean over instances
    struct PerInstance {
        RougeScore rouge1, rouge2, rougeL;
    };
    std::vector<PerInstance> per_instance;

    std::string to_json() const;
};

EvalReport evaluate(const std::vector<TokenSeq>& candidates,
                    const std::vector<TokenSeq>& references);

} // namespace mgcn
