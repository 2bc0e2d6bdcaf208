#pragma once

#include <string>
#include <vector>

#include "mgcn/kg.hpp"

namespace mgcn {

// Corpus statistics: the seven standard summary rows.
struct Stats {
    std::size_t instances = 0;
    std::size_t input_vocab = 0;  // distinct label tokens over triple fields
    std::size_t output_vocab = 0; // distinct text tokens
    std::size_t entities = 0;     // distinct subject/object labels
    std::size_t relations = 0;    // distinct predicate labels
    double avg_triples_per_input = 0.0;
    double avg_words_per_output = 0.0;

    std::string to_report() const;
};

Stats dataset_stats(const std::vector<Instance>& instances);

} // namespace mgcn
