#pragma once

#include <covenant/errors.hpp>

namespace covenant {

struct RootResult {
  double root;
  double value;  // f(root)
};

// Plain bisection on a bracketing interval. Deterministic and derivative-free;
// callers supply the endpoint values so grid scans do not re-evaluate them.
template <class F>
RootResult bisect_root(F&& f, double lo, double hi, double flo, double fhi, double xtol) {
  if (flo == 0.0) return {lo, 0.0};
  if (fhi == 0.0) return {hi, 0.0};
  if ((flo > 0.0) == (fhi > 0.0))
    throw SolverError("bisection: interval does not bracket a sign change");
  for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return {mid, 0.0};
    if ((fmid > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  const double mid = 0.5 * (lo + hi);
  return {mid, f(mid)};
}

}  // namespace covenant
