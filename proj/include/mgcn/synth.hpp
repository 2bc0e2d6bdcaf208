#pragma once

#include <cstdint>
#include <vector>

#include "mgcn/kg.hpp"

namespace mgcn {

// Deterministic synthetic corpus. Every reference text mentions the main
// entity label and at least one topic entity label, so delexicalization and
// overfitting runs on this data are meaningful.
std::vector<Instance> synth_corpus(std::uint64_t seed,
                                   std::size_t n_instances,
                                   std::size_t n_entities,
                                   std::size_t n_relations,
                                   std::size_t triples_per_instance);

} // namespace mgcn
