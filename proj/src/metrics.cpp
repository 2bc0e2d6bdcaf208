#include "mgcn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "mgcn/error.hpp"

namespace mgcn {

namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(const TokenSeq& s,
                                                             int n) {
    std::map<std::vector<std::string>, std::size_t> counts;
    if (static_cast<int>(s.size()) < n)
        return counts;
    for (std::size_t i = 0; i + n <= s.size(); ++i)
        ++counts[std::vector<std::string>(s.begin() + i, s.begin() + i + n)];
    return counts;
}

} // namespace

double bleu(const std::vector<TokenSeq>& candidates,
            const std::vector<TokenSeq>& references, int max_n, bool smooth) {
    if (candidates.empty())
        throw DataError("bleu: empty candidate list");
    if (candidates.size() != references.size())
        throw DataError("bleu: " + std::to_string(candidates.size()) +
                        " candidates vs " + std::to_string(references.size()) +
                        " references");

    std::size_t cand_len = 0, ref_len = 0;
    std::vector<std::size_t> matched(max_n, 0), total(max_n, 0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        cand_len += candidates[i].size();
        ref_len += references[i].size();
        for (int n = 1; n <= max_n; ++n) {
            auto cand = ngram_counts(candidates[i], n);
            auto ref = ngram_counts(references[i], n);
            for (const auto& [gram, count] : cand) {
                total[n - 1] += count;
                auto it = ref.find(gram);
                if (it != ref.end())
                    matched[n - 1] += std::min(count, it->second);
            }
        }
    }
    if (cand_len == 0)
        return 0.0;

    double log_sum = 0.0;
    for (int n = 0; n < max_n; ++n) {
        double m = static_cast<double>(matched[n]);
        double t = static_cast<double>(total[n]);
        if (smooth && n > 0) {
            m += 1.0;
            t += 1.0;
        }
        if (m == 0.0 || t == 0.0)
            return 0.0;
        log_sum += std::log(m / t);
    }
    const double geo = std::exp(log_sum / max_n);
    const double bp =
        cand_len < ref_len
            ? std::exp(1.0 - static_cast<double>(ref_len) /
                                 static_cast<double>(cand_len))
            : 1.0;
    return 100.0 * bp * geo;
}

RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference,
                   int n) {
    if (n != 1 && n != 2)
        throw InternalError("rouge_n: n must be 1 or 2");
    auto cand = ngram_counts(candidate, n);
    auto ref = ngram_counts(reference, n);
    std::size_t overlap = 0, cand_total = 0, ref_total = 0;
    for (const auto& [gram, count] : cand) {
        cand_total += count;
        auto it = ref.find(gram);
        if (it != ref.end())
            overlap += std::min(count, it->second);
    }
    for (const auto& [gram, count] : ref)
        ref_total += count;

    RougeScore s;
    if (cand_total > 0)
        s.precision = static_cast<double>(overlap) /
                      static_cast<double>(cand_total);
    if (ref_total > 0)
        s.recall = static_cast<double>(overlap) /
                   static_cast<double>(ref_total);
    if (s.precision + s.recall > 0.0)
        s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
    RougeScore s;
    if (candidate.empty() || reference.empty())
        return s;
    const double lcs = static_cast<double>(lcs_length(candidate, reference));
    s.precision = lcs / static_cast<double>(candidate.size());
    s.recall = lcs / static_cast<double>(reference.size());
    if (s.precision + s.recall > 0.0)
        s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

EvalReport evaluate(const std::vector<TokenSeq>& candidates,
                    const std::vector<TokenSeq>& references) {
    EvalReport report;
    report.bleu_score = bleu(candidates, references);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        EvalReport::PerInstance pi;
        pi.rouge1 = rouge_n(candidates[i], references[i], 1);
        pi.rouge2 = rouge_n(candidates[i], references[i], 2);
        pi.rougeL = rouge_l(candidates[i], references[i]);
        report.per_instance.push_back(pi);
    }
    auto mean = [&](auto proj) {
        RougeScore acc;
        for (const auto& pi : report.per_instance) {
            const RougeScore& s = proj(pi);
            acc.precision += s.precision;
            acc.recall += s.recall;
            acc.f1 += s.f1;
        }
        const auto n = static_cast<double>(report.per_instance.size());
        return RougeScore{acc.precision / n, acc.recall / n, acc.f1 / n};
    };
    report.rouge1 = mean([](const auto& pi) -> const RougeScore& {
        return pi.rouge1;
    });
    report.rouge2 = mean([](const auto& pi) -> const RougeScore& {
        return pi.rouge2;
    });
    report.rougeL = mean([](const auto& pi) -> const RougeScore& {
        return pi.rougeL;
    });
    return report;
}

std::string EvalReport::to_json() const {
    nlohmann::json j;
    j["bleu"] = bleu_score;
    auto rouge_json = [](const RougeScore& s) {
        return nlohmann::json{{"precision", s.precision},
                              {"recall", s.recall},
                              {"f1", s.f1}};
    };
    j["rouge1"] = rouge_json(rouge1);
    j["rouge2"] = rouge_json(rouge2);
    j["rougeL"] = rouge_json(rougeL);
    nlohmann::json per = nlohmann::json::array();
    for (const auto& pi : per_instance)
        per.push_back({{"rouge1", rouge_json(pi.rouge1)},
                       {"rouge2", rouge_json(pi.rouge2)},
                       {"rougeL", rouge_json(pi.rougeL)}});
    j["per_instance"] = std::move(per);
    return j.dump(2);
}

} // namespace mgcn
