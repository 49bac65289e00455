#pragma once

#include <stdexcept>

#include <covenant/model.hpp>

namespace covenant::detail {

// Lite gate for the threshold machinery: finite in-range primitives and
// positive misallocation gains. The full assumption set (gain ordering,
// feasibility) is enforced only by the top-level solvers so that diagnostic
// sweeps can probe boundary regimes cell by cell.
inline void require_solvable(const ModelParams& m) {
  const auto rep = validate_params(m);
  for (const auto& chk : rep.checks) {
    if ((chk.name == "finite" || chk.name == "ranges") && !chk.pass)
      throw std::invalid_argument("parameter check failed: " + chk.name + " (" + chk.detail + ")");
  }
  if (!(restructuring_gain_bad(m) > 0.0) || !(continuation_gain_good(m) > 0.0))
    throw std::invalid_argument(
        "parameter check failed: misallocation gains must both be positive");
}

}  // namespace covenant::detail
