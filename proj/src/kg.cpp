#include "mgcn/kg.hpp"

#include <set>

#include "mgcn/error.hpp"

namespace mgcn {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

KnowledgeGraph KnowledgeGraph::build(const std::vector<Triple>& triples) {
    KnowledgeGraph kg;
    std::set<Triple> seen;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        Triple t{trim(triples[i].subject), trim(triples[i].predicate),
                 trim(triples[i].object)};
        if (t.subject.empty() || t.predicate.empty() || t.object.empty())
            throw DataError("triple " + std::to_string(i) +
                            ": empty field after trimming");
        if (!seen.insert(t).second)
            continue;
        const std::size_t idx = kg.triples_.size();
        kg.index_[t.subject].push_back(idx);
        if (t.object != t.subject)
            kg.index_[t.object].push_back(idx);
        kg.triples_.push_back(std::move(t));
    }
    return kg;
}

bool KnowledgeGraph::has_entity(const std::string& label) const {
    return index_.count(label) > 0;
}

const std::vector<std::size_t>&
KnowledgeGraph::incident(const std::string& label) const {
    static const std::vector<std::size_t> empty;
    auto it = index_.find(label);
    return it == index_.end() ? empty : it->second;
}

std::vector<std::string> KnowledgeGraph::entities() const {
    std::vector<std::string> out;
    out.reserve(index_.size());
    for (const auto& [label, _] : index_)
        out.push_back(label);
    return out;
}

void Instance::validate(const std::string& where) const {
    if (main_entity.empty())
        throw DataError(where + ": empty main entity");
    if (!triples.empty()) {
        bool found = false;
        for (const Triple& t : triples)
            if (t.subject == main_entity || t.object == main_entity) {
                found = true;
                break;
            }
        if (!found)
            throw DataError(where + ": main entity '" + main_entity +
                            "' appears in no triple");
    }
    std::set<std::string> seen;
    for (const std::string& t : topic_entities) {
        if (t == main_entity)
            throw DataError(where + ": topic entity equals main entity '" +
                            main_entity + "'");
        if (!seen.insert(t).second)
            throw DataError(where + ": duplicate topic entity '" + t + "'");
    }
}

} // namespace mgcn
