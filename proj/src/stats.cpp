#include "mgcn/stats.hpp"

#include <set>
#include <sstream>

#include "mgcn/error.hpp"
#include "mgcn/preprocess.hpp"

namespace mgcn {

Stats dataset_stats(const std::vector<Instance>& instances) {
    if (instances.empty())
        throw DataError("dataset_stats: empty instance list");

    Stats s;
    s.instances = instances.size();
    std::set<std::string> in_vocab, out_vocab, entities, relations;
    std::size_t total_triples = 0, total_words = 0;
    for (const Instance& inst : instances) {
        total_triples += inst.triples.size();
        total_words += inst.text.size();
        for (const std::string& tok : inst.text)
            out_vocab.insert(tok);
        for (const Triple& t : inst.triples) {
            entities.insert(t.subject);
            entities.insert(t.object);
            relations.insert(t.predicate);
            for (const std::string& tok : label_tokens(t.subject))
                in_vocab.insert(tok);
            for (const std::string& tok : label_tokens(t.predicate))
                in_vocab.insert(tok);
            for (const std::string& tok : label_tokens(t.object))
                in_vocab.insert(tok);
        }
    }
    s.input_vocab = in_vocab.size();
    s.output_vocab = out_vocab.size();
    s.entities = entities.size();
    s.relations = relations.size();
    s.avg_triples_per_input =
        static_cast<double>(total_triples) / static_cast<double>(s.instances);
    s.avg_words_per_output =
        static_cast<double>(total_words) / static_cast<double>(s.instances);
    return s;
}

std::string Stats::to_report() const {
    std::ostringstream os;
    os << "instances: " << instances << '\n'
       << "input_vocab: " << input_vocab << '\n'
       << "output_vocab: " << output_vocab << '\n'
       << "distinct_entities: " << entities << '\n'
       << "distinct_relations: " << relations << '\n'
       << "avg_triples_per_input: " << avg_triples_per_input << '\n'
       << "avg_words_per_output: " << avg_words_per_output << '\n';
    return os.str();
}

} // namespace mgcn
