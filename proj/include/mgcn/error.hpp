#pragma once

#include <stdexcept>
#include <string>

namespace mgcn {

// Problems with input data: malformed records, unknown entities, bad files.
// The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal contracts: shape mismatches, violated invariants.
// The CLI maps these to exit code 3.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace mgcn
