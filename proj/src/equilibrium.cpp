#include <covenant/equilibrium.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <covenant/errors.hpp>
#include <covenant/payoffs.hpp>
#include <covenant/rootfind.hpp>

#include "param_gate.hpp"

namespace covenant {

using detail::require_solvable;

namespace {

constexpr int kGridCells = 2048;
constexpr double kRootTol = 1e-12;

void require_face_value(double d, const ModelParams& m, const char* what) {
  if (!(d > m.restructure_value && d <= m.payout))
    throw SolverError(std::string(what) + " = " + std::to_string(d) +
                      " leaves the break-even face value outside (restructure_value, payout]");
}

}  // namespace

const char* to_string(Corner c) {
  return c == Corner::interior ? "interior" : "full_disclosure";
}

double solve_d1(const ModelParams& m) {
  require_solvable(m);
  const double d1 = (m.setup_cost - 0.5 * (1.0 - m.gamma_b) * m.restructure_value) /
                    (0.5 * (m.gamma_g + m.gamma_b));
  require_face_value(d1, m, "d1");
  return d1;
}

double solve_d0(const ModelParams& m, const ErrorDensity& density, double x_star) {
  require_solvable(m);
  if (!(x_star >= -1.0 && x_star <= 0.0))
    throw std::invalid_argument("x_star outside [-1, 0]");
  const auto dc = derived_constants(m, density);
  const double p = m.info_prob;
  const double pool = 1.0 - p + p * density.cdf(x_star);
  // expected per-unit-of-face-value shortfall the lender prices into the
  // nondisclosure pool: informed withholders below x_star plus the uninformed
  const double adj = (p * dc.c1 * density.partial_x_moment(-1.0, x_star) + (1.0 - p) * dc.c) / pool;
  const double d0 = (m.setup_cost - 0.5 * (1.0 - m.gamma_b) * m.restructure_value - adj) /
                    (0.5 * (m.gamma_g + m.gamma_b));
  require_face_value(d0, m, "d0");
  return d0;
}

double delta(const ModelParams& m, double d0, double d1, double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("error degree outside [-1, 1]");
  const double slope = x <= 0.0
                           ? m.private_benefit +
                                 m.tau * (1.0 - m.kappa) * restructuring_gain_bad(m)
                           : m.private_benefit -
                                 m.tau * (1.0 - m.kappa) * continuation_gain_good(m);
  return 0.5 * (m.gamma_g + m.gamma_b) * (d0 - d1) + 0.5 * x * slope;
}

double threshold_residual(const ModelParams& m, const ErrorDensity& density, double x_star) {
  require_solvable(m);
  if (!(x_star >= -1.0 && x_star <= 0.0))
    throw std::invalid_argument("x_star outside [-1, 0]");
  const auto dc = derived_constants(m, density);
  const double p = m.info_prob;
  return p * dc.c1 * density.integral_cdf(x_star) +
         p * (dc.c2 - dc.c1) * x_star * density.cdf(x_star) +
         (1.0 - p) * (dc.c2 * x_star - dc.c);
}

ThresholdResult solve_threshold(const ModelParams& m, const ErrorDensity& density) {
  require_solvable(m);
  const auto dc = derived_constants(m, density);
  const double p = m.info_prob;
  auto j = [&](double x) {
    return p * dc.c1 * density.integral_cdf(x) + p * (dc.c2 - dc.c1) * x * density.cdf(x) +
           (1.0 - p) * (dc.c2 * x - dc.c);
  };

  const double j_left = j(-1.0);
  if (j_left >= 0.0) {
    // withholding never pays even at the worst overstatement
    return ThresholdResult{-1.0, Corner::full_disclosure, true, {}};
  }
  const double j_right = j(0.0);
  if (!(j_right > 0.0))
    throw SolverError("indifference residual not positive at zero; threshold problem ill-posed");

  std::vector<double> roots;
  bool monotone_cross = true;
  double prev_x = -1.0;
  double prev_j = j_left;
  for (int i = 1; i <= kGridCells; ++i) {
    const double x = -1.0 + double(i) / kGridCells;
    const double jx = i == kGridCells ? j_right : j(x);
    if (prev_j == 0.0) {
      roots.push_back(prev_x);
    } else if (jx != 0.0 && std::signbit(prev_j) != std::signbit(jx)) {
      const auto r = bisect_root(j, prev_x, x, prev_j, jx, kRootTol);
      roots.push_back(r.root);
      if (jx < 0.0) monotone_cross = false;  // crossed downward somewhere
    }
    prev_x = x;
    prev_j = jx;
  }
  if (roots.empty())
    throw SolverError("no sign change of the indifference residual on [-1, 0]");

  const bool unique = roots.size() == 1 && monotone_cross;
  return ThresholdResult{roots.back(), Corner::interior, unique, std::move(roots)};
}

EquilibriumSolution solve_equilibrium(const ModelParams& m, const ErrorDensity& density) {
  const auto rep = validate_params(m);
  if (!rep.all_pass())
    throw std::invalid_argument("parameter check failed: " + rep.first_failure());

  auto th = solve_threshold(m, density);
  EquilibriumSolution eq;
  eq.d1 = solve_d1(m);
  eq.d0 = solve_d0(m, density, th.x_star);
  eq.x_star = th.x_star;
  eq.corner = th.corner;
  eq.unique = th.unique;
  eq.roots = std::move(th.roots);
  eq.residual_j = std::abs(threshold_residual(m, density, eq.x_star));
  eq.residual_delta =
      th.corner == Corner::interior ? std::abs(delta(m, eq.d0, eq.d1, eq.x_star)) : 0.0;
  return eq;
}

BestResponseReport verify_best_response(const ModelParams& m, const ErrorDensity& density,
                                        const EquilibriumSolution& eq, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");

  BestResponseReport rep{grid_size, 0, 0.0};
  for (int i = 0; i <= grid_size; ++i) {
    const double x = -1.0 + 2.0 * double(i) / grid_size;
    if (std::abs(x - eq.x_star) <= 1e-6) continue;

    // expected manager payoff from withholding at known degree x, rebuilt
    // from the terminal payoff cells rather than the closed-form gap
    const auto regime = x <= 0.0 ? ErrorRegime::undue_optimism : ErrorRegime::false_alarm;
    const auto table = payoff_table(m, eq.d0, regime);
    const double q = std::abs(x);  // probability the signal errs given the degree
    double withhold = 0.0;
    for (const auto& cell : table) {
      const double state_prob = 0.5;
      const bool mismatched = (cell.state == State::good) != (cell.signal == Signal::good);
      const double signal_prob = mismatched ? q : (
          (x <= 0.0) == (cell.state == State::bad) ? 1.0 - q : 1.0);
      withhold += state_prob * signal_prob * cell.manager;
    }

    // disclosure corrects the rule and reprices the debt at d1
    const auto disc_g = payoff_cell(m, eq.d1, State::good, Signal::good);
    const auto disc_b = payoff_cell(m, eq.d1, State::bad, Signal::bad);
    const double disclose = 0.5 * disc_g.manager + 0.5 * disc_b.manager;

    const double gap = disclose - withhold;
    const bool should_disclose = x > eq.x_star;
    if (should_disclose != (gap > 0.0)) {
      ++rep.violations;
      rep.max_violation = std::max(rep.max_violation, std::abs(gap));
    }
  }
  return rep;
}

}  // namespace covenant
