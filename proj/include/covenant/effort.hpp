#pragma once

#include <utility>
#include <vector>

#include <covenant/density.hpp>
#include <covenant/equilibrium.hpp>
#include <covenant/model.hpp>

namespace covenant {

// Manager's expected values in the disclosure subgame at a solved equilibrium.
struct ExpectedUtilities {
  double u_uninformed;      // manager value when the error stays unlearned
  double u_withhold_avg;    // integral of E[u | x, withhold] f(x) over [-1, x_star]
  double u_disclose;        // manager value on disclosure: w_fb - setup_cost
  double lender_uninformed; // lender value against the uninformed pool (diagnostic)
  double w_fb;              // first-best surplus under a perfect rule
};

// c'(p) for the quadratic information cost c(p) = cost_scale p^2 / 2.
double marginal_cost(const ModelParams& m, double p);

// Socially optimal learning probability; interior or SolverError.
double first_best_effort(const ModelParams& m, const ErrorDensity& density);

// Values above, built from payoff-table expectations at eq.d0. Internally
// cross-checks u_uninformed against direct quadrature of the cell payoffs
// (tolerance 1e-9) and throws SolverError on disagreement.
ExpectedUtilities expected_utilities(const ModelParams& m, const ErrorDensity& density,
                                     const EquilibriumSolution& eq);

// Marginal private value of learning at effort p: re-solves the disclosure
// subgame with info_prob = p and differences informed vs uninformed value.
double marginal_benefit(const ModelParams& m, const ErrorDensity& density, double p);

struct EffortSolution {
  double p_fb;
  double p_star;
  double w_fb;
  bool unique;                  // exactly one interior FOC crossing
  std::vector<double> p_roots;  // every crossing found (ascending)
  std::vector<std::pair<double, double>> mb_trace;  // (p, marginal benefit) scan samples
};

// Solves marginal_cost(p) = marginal_benefit(p) on (1e-6, 1-1e-6) by a
// 64-cell scan plus bisection. The marginal benefit can rise steeply near
// p = 1 (the uninformed pool faces ever-worse terms), so the FOC may cross
// twice; p_star is the first crossing, where marginal cost crosses from
// below -- the stable fixed point. Throws SolverError when no crossing
// exists or the result is not interior.
EffortSolution solve_effort(const ModelParams& m, const ErrorDensity& density);

}  // namespace covenant
