#pragma once

#include <string>
#include <utility>
#include <vector>

#include <covenant/density.hpp>
#include <covenant/model.hpp>

namespace covenant {

enum class SignEntry { positive, negative, zero, ambiguous };
enum class TableTarget { c1, c2, c3, x_star_general, x_star_uniform };

const char* to_string(SignEntry s);
const char* to_string(TableTarget t);

struct SignTable {
  TableTarget target;
  // One row per parameter, in canonical order:
  // gamma_g, gamma_b, restructure_value, private_benefit, tau, kappa, info_prob.
  std::vector<std::pair<ParamField, SignEntry>> rows;
};

struct StaticsReport {
  std::vector<SignTable> tables;
  std::vector<std::string> mismatches;  // cells departing from the reference patterns
  bool pass;
};

// Quadratic-formula threshold for the uniform error density. Agrees with the
// bisection solver to the bisection tolerance; SolverError if the quadratic
// has no root inside [-1, 0].
double closed_form_threshold_uniform(const ModelParams& m);

// d x_star / d (parameter) by central differences with one Richardson step.
// Step is rel_step * max(1, |value|); both perturbed solves must succeed.
double dxstar_dparam(const ModelParams& m, const ErrorDensity& density, ParamField which,
                     double rel_step = 1e-5);

// Builds the five sign tables (analytic derivatives of c1/c2/c3, numerical
// threshold derivatives under the uniform density, and the density-robust
// cells under the supplied density) and compares them against the reference
// patterns, which hold for interior tau and small kappa. Requires
// kappa <= 0.05 and fully valid params.
StaticsReport sign_tables(const ModelParams& m, const ErrorDensity& density);

}  // namespace covenant
