#pragma once

#include <map>

#include "mgcn/kg.hpp"

namespace mgcn {

// Power iteration over the entity graph. Each distinct (subject, object)
// pair counts as one directed edge; dangling nodes redistribute their mass
// uniformly. Scores sum to 1. Converges when the L1 change drops below
// `tolerance` or after `max_iters` sweeps.
std::map<std::string, double> pagerank(const KnowledgeGraph& kg,
                                       double damping = 0.85,
                                       double tolerance = 1e-10,
                                       int max_iters = 200);

} // namespace mgcn
