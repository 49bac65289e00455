#pragma once

#include <vector>

#include <covenant/density.hpp>
#include <covenant/model.hpp>

namespace covenant {

enum class Corner { interior, full_disclosure };

const char* to_string(Corner c);

struct ThresholdResult {
  double x_star;              // disclosure threshold; informed managers disclose iff x > x_star
  Corner corner;              // full_disclosure means x_star pinned at -1
  bool unique;                // one sign change and residual increasing at grid resolution
  std::vector<double> roots;  // every interior indifference root found (ascending)
};

struct EquilibriumSolution {
  double d1;      // face value under disclosure (perfect rule)
  double d0;      // face value under nondisclosure (default rule + pooled beliefs)
  double x_star;
  Corner corner;
  bool unique;
  double residual_j;      // |indifference residual| at x_star (disclosure slack when corner)
  double residual_delta;  // |disclose-minus-withhold gap| at x_star (interior case)
  std::vector<double> roots;
};

// Break-even face value when the rule error is disclosed and corrected.
// Throws SolverError if it falls outside (restructure_value, payout].
double solve_d1(const ModelParams& m);

// Break-even face value when nothing is disclosed, given the equilibrium
// threshold. Same feasibility window as solve_d1.
double solve_d0(const ModelParams& m, const ErrorDensity& density, double x_star);

// Manager's disclose-minus-withhold payoff gap at error degree x in [-1, 1].
double delta(const ModelParams& m, double d0, double d1, double x);

// Lender-indifference residual J at a candidate threshold in [-1, 0]. The
// equilibrium threshold is its root; J(-1) >= 0 flags the full-disclosure
// corner and J(0) > 0 always holds for well-posed inputs.
double threshold_residual(const ModelParams& m, const ErrorDensity& density, double x_star);

// Scans J on a 2048-cell grid over [-1, 0], bisects every sign change to an
// interval below 1e-12, and returns the largest root (or the corner).
ThresholdResult solve_threshold(const ModelParams& m, const ErrorDensity& density);

// Full equilibrium of the disclosure subgame. Requires validate_params to
// pass (throws std::invalid_argument naming the failing check otherwise).
EquilibriumSolution solve_equilibrium(const ModelParams& m, const ErrorDensity& density);

struct BestResponseReport {
  int grid_size;
  int violations;
  double max_violation;  // largest wrong-signed gap among violations
};

// Replays the disclose/withhold decision on a grid of error degrees using
// payoff-table expectations (not the closed-form gap) and counts departures
// from the threshold rule. Points within 1e-6 of x_star are skipped.
BestResponseReport verify_best_response(const ModelParams& m, const ErrorDensity& density,
                                        const EquilibriumSolution& eq, int grid_size);

}  // namespace covenant
