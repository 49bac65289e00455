#pragma once

#include <stdexcept>

namespace covenant {

// Raised when a solver cannot produce a result for structurally sound input:
// infeasible face values, missing brackets, quadrature that will not converge.
// Precondition violations (bad ranges, malformed tables) use
// std::invalid_argument instead.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace covenant
