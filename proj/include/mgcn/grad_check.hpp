#pragma once

#include <functional>
#include <span>

#include "mgcn/params.hpp"

namespace mgcn {

// Compares analytic gradients against central finite differences for every
// scalar entry of every listed parameter. `closure` must rebuild the loss
// from the parameters' current values and be deterministic. Returns the
// maximum relative error |a - n| / max(|a|, |n|, 1e-8).
double grad_check(const std::function<Var()>& closure,
                  std::span<Parameter* const> params, double eps = 1e-5);

} // namespace mgcn
