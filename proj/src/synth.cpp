#include "mgcn/synth.hpp"

#include <algorithm>
#include <random>

#include "mgcn/error.hpp"
#include "mgcn/preprocess.hpp"

namespace mgcn {

namespace {

const char* kBaseWords[] = {"lake",  "ridge",  "river", "harbor",
                            "grove", "summit", "vale",  "moor",
                            "crag",  "delta",  "basin", "bluff"};
const char* kRelationWords[] = {"borders", "contains", "overlooks",
                                "feeds",   "joins",    "crosses",
                                "shadows", "drains",   "circles",
                                "touches"};

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

} // namespace

std::vector<Instance> synth_corpus(std::uint64_t seed,
                                   std::size_t n_instances,
                                   std::size_t n_entities,
                                   std::size_t n_relations,
                                   std::size_t triples_per_instance) {
    if (n_instances < 1 || n_entities < 1 || n_relations < 1 ||
        triples_per_instance < 1)
        throw DataError("synth_corpus: all counts must be >= 1");

    std::mt19937_64 rng(seed);

    std::vector<std::string> entities;
    for (std::size_t i = 0; i < n_entities; ++i)
        entities.push_back(std::string(kBaseWords[pick(rng, 12)]) +
                           std::to_string(i));
    std::vector<std::string> relations;
    for (std::size_t i = 0; i < n_relations; ++i) {
        std::string rel = kRelationWords[i % 10];
        if (i >= 10)
            rel += std::to_string(i / 10);
        relations.push_back(std::move(rel));
    }

    std::vector<Instance> corpus;
    for (std::size_t i = 0; i < n_instances; ++i) {
        Instance inst;
        inst.main_entity = entities[pick(rng, n_entities)];
        const std::size_t n_topics = n_entities > 2 ? 1 + pick(rng, 2) : 1;
        while (inst.topic_entities.size() < n_topics) {
            const std::string& cand = entities[pick(rng, n_entities)];
            if (cand == inst.main_entity)
                continue;
            if (std::find(inst.topic_entities.begin(),
                          inst.topic_entities.end(),
                          cand) != inst.topic_entities.end())
                break; // small pools: settle for fewer topics
            inst.topic_entities.push_back(cand);
        }
        if (inst.topic_entities.empty()) {
            // single-entity pool: fabricate a distinct neighbor label
            inst.topic_entities.push_back(inst.main_entity + " side");
        }

        const std::string& first_rel = relations[pick(rng, n_relations)];
        inst.triples.push_back(
            {inst.main_entity, first_rel, inst.topic_entities[0]});
        int guard = 0;
        while (inst.triples.size() < triples_per_instance && guard < 200) {
            ++guard;
            std::vector<const std::string*> pool{&inst.main_entity};
            for (const std::string& t : inst.topic_entities)
                pool.push_back(&t);
            pool.push_back(&entities[pick(rng, n_entities)]);
            pool.push_back(&entities[pick(rng, n_entities)]);
            const std::string& s = *pool[pick(rng, pool.size())];
            const std::string& o = *pool[pick(rng, pool.size())];
            if (s == o)
                continue;
            Triple t{s, relations[pick(rng, n_relations)], o};
            if (std::find(inst.triples.begin(), inst.triples.end(), t) ==
                inst.triples.end())
                inst.triples.push_back(std::move(t));
        }

        for (const std::string& tok : label_tokens(inst.main_entity))
            inst.text.push_back(tok);
        inst.text.push_back(first_rel);
        for (const std::string& tok : label_tokens(inst.topic_entities[0]))
            inst.text.push_back(tok);
        inst.text.push_back(".");

        inst.validate("synth instance " + std::to_string(i));
        corpus.push_back(std::move(inst));
    }
    return corpus;
}

} // namespace mgcn
