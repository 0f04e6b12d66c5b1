#pragma once

#include <stdexcept>
#include <string>

namespace dphi {

// Raised on invalid parameters, malformed map specs, unsupported operation
// requests and resource-cap violations. The CLI maps this to exit code 2.
struct invalid_spec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when an iterative or series computation fails to converge, or a
// grid evaluation produces a non-finite value. The CLI maps this to exit
// code 3.
struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dphi
