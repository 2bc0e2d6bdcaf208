#pragma once

#include <map>
#include <string>
#include <vector>

namespace mgcn {

// Directed (subject, predicate, object) fact. A value type: equal fields
// mean equal triples, and triple sets deduplicate on that equality.
struct Triple {
    std::string subject;
    std::string predicate;
    std::string object;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Immutable triple store with an entity index over both roles. Iteration
// order over triples is insertion order with duplicates removed.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;
    // Rejects triples with an empty field, naming the offending position.
    static KnowledgeGraph build(const std::vector<Triple>& triples);

    const std::vector<Triple>& triples() const { return triples_; }
    std::size_t triple_count() const { return triples_.size(); }
    std::size_t entity_count() const { return index_.size(); }
    bool has_entity(const std::string& label) const;
    // Indices into triples() where the entity appears as subject or object.
    const std::vector<std::size_t>& incident(const std::string& label) const;
    std::vector<std::string> entities() const;

private:
    std::vector<Triple> triples_;
    std::map<std::string, std::vector<std::size_t>> index_;
};

// One training/evaluation example: a main entity, its topic entities, the
// extracted triple set and the tokenized reference text.
struct Instance {
    std::string main_entity;
    std::vector<std::string> topic_entities;
    std::vector<Triple> triples; // deduplicated, insertion order
    std::vector<std::string> text; // token list

    // Checks the structural invariants; throws DataError naming `where`.
    void validate(const std::string& where) const;
};

// Trims leading/trailing ASCII whitespace.
std::string trim(const std::string& s);

} // namespace mgcn
