#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgcn/kg.hpp"

namespace mgcn {

// Lowercases, splits on whitespace and detaches .,;:!?()"' as separate
// tokens. Delexicalization placeholders (MAIN_0, TOPIC_3, ...) keep their
// case so they survive a save/load round trip.
std::vector<std::string> tokenize(const std::string& text);

// Whitespace-split tokens of an entity or relation label, lowercased with
// the same placeholder exception. Used for vocabulary counting and for
// node-embedding initialization.
std::vector<std::string> label_tokens(const std::string& label);

bool is_placeholder_token(const std::string& token);

// Single shared vocabulary over output tokens and entity/relation label
// tokens. Reserved tokens sit at fixed indices; everything else is ordered
// by frequency (descending) then lexicographically.
class Vocabulary {
public:
    static constexpr std::size_t kPad = 0;
    static constexpr std::size_t kBos = 1;
    static constexpr std::size_t kEos = 2;
    static constexpr std::size_t kUnk = 3;
    static constexpr std::size_t kGlobal = 4;
    static constexpr std::size_t kReservedCount = 5;

    Vocabulary();
    explicit Vocabulary(std::vector<std::string> tokens, int min_freq = 1);

    std::size_t size() const { return tokens_.size(); }
    std::size_t lookup(const std::string& token) const; // kUnk if absent
    const std::string& token(std::size_t index) const;
    const std::vector<std::string>& tokens() const { return tokens_; }
    int min_freq() const { return min_freq_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::size_t> index_;
    int min_freq_ = 1;
};

// Counts text tokens plus label tokens of every triple field, keeps tokens
// with frequency >= min_freq.
Vocabulary build_vocab(const std::vector<Instance>& instances,
                       int min_freq = 1);

// Placeholder -> original label, with role and index per placeholder.
struct DelexMapping {
    enum class Role { main, topic };
    struct Entry {
        std::string label;
        Role role;
        int index; // 0 for main, 1-based for topics
    };
    std::map<std::string, Entry> entries;

    const Entry* find(const std::string& placeholder) const;
};

struct DelexResult {
    Instance instance;
    DelexMapping mapping;
};

// Replaces the main entity with MAIN_0 and the i-th topic entity with
// TOPIC_i in both triples and text. Text substitution is case-insensitive
// longest-match over the tokenized label, scanning left to right; relation
// labels are untouched.
DelexResult delexicalize(const Instance& instance);

// Inverse substitution. Placeholders missing from the mapping stay verbatim
// and produce a warning.
std::string relexicalize(const std::vector<std::string>& tokens,
                         const DelexMapping& mapping,
                         std::vector<std::string>* warnings = nullptr);

// Two-column tab-separated (placeholder, label) files.
void save_mapping(const DelexMapping& mapping, const std::string& path);
DelexMapping load_mapping(const std::string& path);

std::string join_tokens(const std::vector<std::string>& tokens);

} // namespace mgcn
