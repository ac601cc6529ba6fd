#pragma once

#include <stdexcept>
#include <string>

namespace icct {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration input (file syntax, unknown keys, invariant violations).
// CLI maps this to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// Physically infeasible request: radially deconfined trap, extreme crystal
// anisotropy, empty feasible set, degenerate fit input. CLI exit code 3.
struct InfeasibleError : Error {
    using Error::Error;
};

// A numerical procedure failed to converge or aborted (MD collision,
// crystallization timeout). CLI exit code 3.
struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace icct
