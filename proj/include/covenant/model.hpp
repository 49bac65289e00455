#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <covenant/density.hpp>

namespace covenant {

// Primitive parameters of the covenant game. Fields default to NaN ("unset")
// so incomplete configurations fail the finiteness check instead of silently
// running on zeros.
struct ModelParams {
  double gamma_g = std::numeric_limits<double>::quiet_NaN();  // success probability, favorable state
  double gamma_b = std::numeric_limits<double>::quiet_NaN();  // success probability, unfavorable state
  double payout = std::numeric_limits<double>::quiet_NaN();   // gross payout on success (Y)
  double restructure_value = std::numeric_limits<double>::quiet_NaN();  // lender recovery under restructuring (y)
  double private_benefit = std::numeric_limits<double>::quiet_NaN();    // manager benefit from continuation (X)
  double setup_cost = std::numeric_limits<double>::quiet_NaN();  // financing the lender breaks even on (K)
  double tau = std::numeric_limits<double>::quiet_NaN();    // manager share of renegotiation surplus
  double kappa = std::numeric_limits<double>::quiet_NaN();  // renegotiation surplus share lost
  double info_prob = std::numeric_limits<double>::quiet_NaN();   // prob. the manager learns the rule error (p)
  double cost_scale = std::numeric_limits<double>::quiet_NaN();  // quadratic information-cost scale
};

// Social gain from restructuring in the unfavorable state: (1-gamma_b) y - X.
inline double restructuring_gain_bad(const ModelParams& m) {
  return (1.0 - m.gamma_b) * m.restructure_value - m.private_benefit;
}

// Social gain from continuing in the favorable state: X - (1-gamma_g) y.
inline double continuation_gain_good(const ModelParams& m) {
  return m.private_benefit - (1.0 - m.gamma_g) * m.restructure_value;
}

enum class ParamField {
  gamma_g,
  gamma_b,
  payout,
  restructure_value,
  private_benefit,
  setup_cost,
  tau,
  kappa,
  info_prob,
  cost_scale,
};

inline constexpr std::array<ParamField, 10> all_param_fields = {
    ParamField::gamma_g,          ParamField::gamma_b,    ParamField::payout,
    ParamField::restructure_value, ParamField::private_benefit,
    ParamField::setup_cost,       ParamField::tau,        ParamField::kappa,
    ParamField::info_prob,        ParamField::cost_scale,
};

const char* to_string(ParamField f);
std::optional<ParamField> param_field_from_string(std::string_view name);
double get(const ModelParams& m, ParamField f);
void set(ModelParams& m, ParamField f, double value);

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;  // informational, never failing

  bool all_pass() const;
  // Name of the first failing check, empty when everything passes.
  std::string first_failure() const;
};

// Never throws; every problem lands in the report.
ValidationReport validate_params(const ModelParams& m);

// Convenience constants of the withholding problem. l_b/l_g are the
// state-contingent misallocation losses; c1..c3 weight the lender's and
// manager's exposure to rule errors; c is the lender's expected uninformed
// adjustment term (negative whenever the error has mass away from zero).
struct DerivedConstants {
  double l_b;
  double l_g;
  double c1;
  double c2;
  double c3;
  double c;
};

// Pure formula evaluation; callers wanting assumption checks run
// validate_params first.
DerivedConstants derived_constants(const ModelParams& m, const ErrorDensity& density);

}  // namespace covenant
