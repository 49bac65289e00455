#pragma once

#include <vector>

namespace covenant {

enum class DensityKind { uniform, triangular, tabulated };

const char* to_string(DensityKind k);

struct DensityKnot {
  double x;
  double f;
};

// Symmetric density of the covenant measurement error on [-1, 1].
//
// Negative draws overstate performance (the rule stays silent in the bad
// state with probability -x), positive draws understate it (false alarm in
// the good state with probability x). The solver only ever needs the four
// queries below.
//
// uniform and triangular (peak at zero) answer every query in closed form;
// tabulated densities interpolate linearly between knots and integrate with
// adaptive Simpson quadrature (absolute tolerance 1e-10, depth cap 40).
class ErrorDensity {
 public:
  static ErrorDensity uniform();
  static ErrorDensity triangular();

  // Knots must span exactly [-1, 1] with strictly increasing x, mirrored
  // symmetrically (grid and values within 1e-9), nonnegative values, and unit
  // trapezoid mass within 1e-8. Throws std::invalid_argument otherwise.
  static ErrorDensity tabulated(std::vector<DensityKnot> knots);

  // Rescales knot values to unit trapezoid mass (convenience for callers
  // holding an unnormalized shape). Throws on nonpositive total mass.
  static std::vector<DensityKnot> normalized(std::vector<DensityKnot> knots);

  DensityKind kind() const { return kind_; }
  const std::vector<DensityKnot>& knots() const { return knots_; }

  double pdf(double x) const;
  // F(x) = integral of f over [-1, x]
  double cdf(double x) const;
  // integral of F over [-1, t]
  double integral_cdf(double t) const;
  // integral of x f(x) over [a, b], requires -1 <= a <= b <= 1
  double partial_x_moment(double a, double b) const;
  // inverse CDF; u in [0, 1]
  double sample(double u) const;

 private:
  explicit ErrorDensity(DensityKind k) : kind_(k) {}

  DensityKind kind_;
  std::vector<DensityKnot> knots_;  // tabulated only
  std::vector<double> cum_;         // mass up to each knot, for sampling
};

}  // namespace covenant
