#include "mgcn/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "mgcn/error.hpp"

namespace mgcn {

namespace {

const std::string kDetached = ".,;:!?()\"'";

bool detached_punct(char c) { return kDetached.find(c) != std::string::npos; }

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string finish_token(std::string raw) {
    if (is_placeholder_token(raw))
        return raw;
    return lower(raw);
}

} // namespace

bool is_placeholder_token(const std::string& token) {
    std::size_t us = token.find('_');
    if (us == std::string::npos || us == 0 || us + 1 >= token.size())
        return false;
    for (std::size_t i = 0; i < us; ++i)
        if (!std::isupper(static_cast<unsigned char>(token[i])))
            return false;
    for (std::size_t i = us + 1; i < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i])))
            return false;
    return true;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(finish_token(cur));
            cur.clear();
        }
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (detached_punct(c)) {
            flush();
            out.emplace_back(1, c);
        } else {
            cur.push_back(c);
        }
    }
    flush();
    return out;
}

std::vector<std::string> label_tokens(const std::string& label) {
    std::vector<std::string> out;
    std::istringstream is(label);
    std::string word;
    while (is >> word)
        out.push_back(finish_token(word));
    return out;
}

Vocabulary::Vocabulary() : Vocabulary({}, 1) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens, int min_freq)
    : min_freq_(min_freq) {
    tokens_ = {"<pad>", "<bos>", "<eos>", "<unk>", "<global>"};
    for (auto& t : tokens) {
        if (index_.count(t) ||
            std::find(tokens_.begin(), tokens_.begin() + kReservedCount, t) !=
                tokens_.begin() + kReservedCount)
            throw InternalError("vocabulary: duplicate token '" + t + "'");
        index_[t] = tokens_.size();
        tokens_.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < kReservedCount; ++i)
        index_[tokens_[i]] = i;
}

std::size_t Vocabulary::lookup(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::token(std::size_t index) const {
    if (index >= tokens_.size())
        throw InternalError("vocabulary: index " + std::to_string(index) +
                            " out of range");
    return tokens_[index];
}

Vocabulary build_vocab(const std::vector<Instance>& instances, int min_freq) {
    std::map<std::string, std::size_t> freq;
    for (const Instance& inst : instances) {
        for (const std::string& tok : inst.text)
            ++freq[tok];
        for (const Triple& t : inst.triples) {
            for (const std::string& tok : label_tokens(t.subject))
                ++freq[tok];
            for (const std::string& tok : label_tokens(t.predicate))
                ++freq[tok];
            for (const std::string& tok : label_tokens(t.object))
                ++freq[tok];
        }
    }
    std::vector<std::pair<std::string, std::size_t>> items(freq.begin(),
                                                           freq.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> kept;
    for (auto& [tok, count] : items)
        if (count >= static_cast<std::size_t>(min_freq))
            kept.push_back(tok);
    return Vocabulary(std::move(kept), min_freq);
}

const DelexMapping::Entry*
DelexMapping::find(const std::string& placeholder) const {
    auto it = entries.find(placeholder);
    return it == entries.end() ? nullptr : &it->second;
}

namespace {

struct LabelPattern {
    std::string placeholder;
    std::vector<std::string> tokens; // lowercased label tokens
};

bool matches_at(const std::vector<std::string>& text, std::size_t pos,
                const std::vector<std::string>& pattern) {
    if (pos + pattern.size() > text.size())
        return false;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (lower(text[pos + i]) != pattern[i])
            return false;
    return true;
}

} // namespace

DelexResult delexicalize(const Instance& instance) {
    DelexResult result;
    result.instance.main_entity = "MAIN_0";
    result.mapping.entries["MAIN_0"] = {instance.main_entity,
                                        DelexMapping::Role::main, 0};

    std::vector<LabelPattern> patterns;
    patterns.push_back({"MAIN_0", label_tokens(instance.main_entity)});
    for (std::size_t i = 0; i < instance.topic_entities.size(); ++i) {
        const std::string ph = "TOPIC_" + std::to_string(i + 1);
        result.mapping.entries[ph] = {instance.topic_entities[i],
                                      DelexMapping::Role::topic,
                                      static_cast<int>(i + 1)};
        result.instance.topic_entities.push_back(ph);
        patterns.push_back({ph, label_tokens(instance.topic_entities[i])});
    }

    auto substitute_field = [&](const std::string& field) -> std::string {
        const std::string low = lower(field);
        if (low == lower(instance.main_entity))
            return "MAIN_0";
        for (std::size_t i = 0; i < instance.topic_entities.size(); ++i)
            if (low == lower(instance.topic_entities[i]))
                return "TOPIC_" + std::to_string(i + 1);
        return field;
    };
    for (const Triple& t : instance.triples)
        result.instance.triples.push_back({substitute_field(t.subject),
                                           t.predicate,
                                           substitute_field(t.object)});

    // Longest match first, left to right; a long main-entity mention is
    // never split by a shorter topic label inside it.
    std::size_t pos = 0;
    while (pos < instance.text.size()) {
        const LabelPattern* best = nullptr;
        for (const LabelPattern& p : patterns) {
            if (p.tokens.empty() || !matches_at(instance.text, pos, p.tokens))
                continue;
            if (!best || p.tokens.size() > best->tokens.size())
                best = &p;
        }
        if (best) {
            result.instance.text.push_back(best->placeholder);
            pos += best->tokens.size();
        } else {
            result.instance.text.push_back(instance.text[pos]);
            ++pos;
        }
    }
    return result;
}

std::string relexicalize(const std::vector<std::string>& tokens,
                         const DelexMapping& mapping,
                         std::vector<std::string>* warnings) {
    std::vector<std::string> out;
    for (const std::string& tok : tokens) {
        if (is_placeholder_token(tok)) {
            if (const DelexMapping::Entry* e = mapping.find(tok)) {
                out.push_back(e->label);
                continue;
            }
            if (warnings)
                warnings->push_back("placeholder '" + tok +
                                    "' missing from mapping");
        }
        out.push_back(tok);
    }
    return join_tokens(out);
}

void save_mapping(const DelexMapping& mapping, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw DataError("cannot write mapping file '" + path + "'");
    for (const auto& [ph, entry] : mapping.entries)
        os << ph << '\t' << entry.label << '\n';
}

DelexMapping load_mapping(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw DataError("cannot read mapping file '" + path + "'");
    DelexMapping mapping;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": expected tab-separated placeholder and label");
        const std::string ph = line.substr(0, tab);
        const std::string label = line.substr(tab + 1);
        DelexMapping::Role role = ph.rfind("MAIN_", 0) == 0
                                      ? DelexMapping::Role::main
                                      : DelexMapping::Role::topic;
        int index = 0;
        try {
            index = std::stoi(ph.substr(ph.find('_') + 1));
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": malformed placeholder '" + ph + "'");
        }
        mapping.entries[ph] = {label, role, index};
    }
    return mapping;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i)
            out += ' ';
        out += tokens[i];
    }
    return out;
}

} // namespace mgcn
