#include <covenant/effort.hpp>

#include <cmath>
#include <string>

#include <covenant/errors.hpp>
#include <covenant/payoffs.hpp>
#include <covenant/quadrature.hpp>
#include <covenant/rootfind.hpp>

namespace covenant {

namespace {

constexpr int kScanCells = 64;
constexpr double kFocLo = 1e-6;
constexpr double kFocHi = 1.0 - 1e-6;
constexpr double kFocTol = 1e-12;
constexpr double kDecompositionTol = 1e-9;

double first_best_surplus(const ModelParams& m) {
  return 0.5 * (m.gamma_g * m.payout + m.private_benefit) +
         0.5 * (m.gamma_b * m.payout + (1.0 - m.gamma_b) * m.restructure_value);
}

// E[manager payoff | degree x, withholding] at face value d0, from the cells.
double manager_value_at(const ModelParams& m, double d0, double x) {
  const auto regime = x <= 0.0 ? ErrorRegime::undue_optimism : ErrorRegime::false_alarm;
  const auto table = payoff_table(m, d0, regime);
  const double q = std::abs(x);
  double v = 0.0;
  for (const auto& cell : table) {
    const bool mismatched = (cell.state == State::good) != (cell.signal == Signal::good);
    const double signal_prob =
        mismatched ? q : ((x <= 0.0) == (cell.state == State::bad) ? 1.0 - q : 1.0);
    v += 0.5 * signal_prob * cell.manager;
  }
  return v;
}

}  // namespace

double marginal_cost(const ModelParams& m, double p) { return m.cost_scale * p; }

double first_best_effort(const ModelParams& m, const ErrorDensity& density) {
  const double l_b = restructuring_gain_bad(m);
  const double l_g = continuation_gain_good(m);
  const double m1 = density.partial_x_moment(0.0, 1.0);
  // planner FOC: c'(p) equals the expected renegotiation burn avoided
  const double p_fb = m.kappa * (l_g + l_b) * m1 / (2.0 * m.cost_scale);
  if (!(p_fb > 0.0 && p_fb < 1.0))
    throw SolverError("first-best learning probability " + std::to_string(p_fb) +
                      " is not interior");
  return p_fb;
}

ExpectedUtilities expected_utilities(const ModelParams& m, const ErrorDensity& density,
                                     const EquilibriumSolution& eq) {
  const auto dc = derived_constants(m, density);
  const double m1 = density.partial_x_moment(0.0, 1.0);

  ExpectedUtilities u;
  u.w_fb = first_best_surplus(m);
  u.u_disclose = u.w_fb - m.setup_cost;

  // lender value of an uninformed claim at face value d0
  u.lender_uninformed =
      0.5 * (m.gamma_g + m.gamma_b) * eq.d0 + 0.5 * (1.0 - m.gamma_b) * m.restructure_value + dc.c;

  // surplus identity: uninformed pairs split w_fb less the expected
  // renegotiation burn, so the manager keeps the remainder
  u.u_uninformed = u.w_fb - 0.5 * m.kappa * (dc.l_g + dc.l_b) * m1 - u.lender_uninformed;

  // independent route: integrate the cell-level manager value over the error
  const double direct =
      adaptive_simpson([&](double x) { return manager_value_at(m, eq.d0, x) * density.pdf(x); },
                       -1.0, 1.0);
  if (std::abs(direct - u.u_uninformed) > kDecompositionTol)
    throw SolverError("uninformed manager value decomposition mismatch: identity " +
                      std::to_string(u.u_uninformed) + " vs quadrature " + std::to_string(direct));

  u.u_withhold_avg =
      eq.x_star <= -1.0
          ? 0.0
          : adaptive_simpson(
                [&](double x) { return manager_value_at(m, eq.d0, x) * density.pdf(x); }, -1.0,
                eq.x_star);
  return u;
}

double marginal_benefit(const ModelParams& m, const ErrorDensity& density, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("effort outside (0, 1)");
  ModelParams at = m;
  at.info_prob = p;

  const auto th = solve_threshold(at, density);
  EquilibriumSolution eq;
  eq.d0 = solve_d0(at, density, th.x_star);
  eq.x_star = th.x_star;
  eq.corner = th.corner;

  const auto u = expected_utilities(at, density, eq);
  return u.u_withhold_avg + (1.0 - density.cdf(eq.x_star)) * u.u_disclose - u.u_uninformed;
}

EffortSolution solve_effort(const ModelParams& m, const ErrorDensity& density) {
  const auto rep = validate_params(m);
  if (!rep.all_pass())
    throw std::invalid_argument("parameter check failed: " + rep.first_failure());

  EffortSolution sol;
  sol.p_fb = first_best_effort(m, density);
  sol.w_fb = first_best_surplus(m);

  auto gap = [&](double p) { return marginal_cost(m, p) - marginal_benefit(m, density, p); };

  double prev_p = kFocLo;
  double prev_mb = marginal_benefit(m, density, prev_p);
  double prev_g = marginal_cost(m, prev_p) - prev_mb;
  sol.mb_trace.emplace_back(prev_p, prev_mb);
  for (int i = 1; i <= kScanCells; ++i) {
    const double pi = kFocLo + (kFocHi - kFocLo) * double(i) / kScanCells;
    const double mbi = marginal_benefit(m, density, pi);
    const double gi = marginal_cost(m, pi) - mbi;
    sol.mb_trace.emplace_back(pi, mbi);
    if (prev_g == 0.0) {
      sol.p_roots.push_back(prev_p);
    } else if (gi != 0.0 && std::signbit(prev_g) != std::signbit(gi)) {
      sol.p_roots.push_back(bisect_root(gap, prev_p, pi, prev_g, gi, kFocTol).root);
    }
    prev_p = pi;
    prev_g = gi;
  }

  if (sol.p_roots.empty())
    throw SolverError(
        "no interior crossing of marginal cost and marginal learning benefit; "
        "the cost scale is too small or too large for an interior effort choice");

  sol.p_star = sol.p_roots.front();
  sol.unique = sol.p_roots.size() == 1;

  if (!(sol.p_star > sol.p_fb))
    throw SolverError("equilibrium learning probability " + std::to_string(sol.p_star) +
                      " does not exceed the first-best level " + std::to_string(sol.p_fb) +
                      "; private and social incentives are misordered");
  return sol;
}

}  // namespace covenant
