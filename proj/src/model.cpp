#include <covenant/model.hpp>

#include <cmath>
#include <sstream>

namespace covenant {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(ParamField f) {
  switch (f) {
    case ParamField::gamma_g: return "gamma_g";
    case ParamField::gamma_b: return "gamma_b";
    case ParamField::payout: return "payout";
    case ParamField::restructure_value: return "restructure_value";
    case ParamField::private_benefit: return "private_benefit";
    case ParamField::setup_cost: return "setup_cost";
    case ParamField::tau: return "tau";
    case ParamField::kappa: return "kappa";
    case ParamField::info_prob: return "info_prob";
    case ParamField::cost_scale: return "cost_scale";
  }
  return "?";
}

std::optional<ParamField> param_field_from_string(std::string_view name) {
  for (ParamField f : all_param_fields)
    if (name == to_string(f)) return f;
  return std::nullopt;
}

double get(const ModelParams& m, ParamField f) {
  switch (f) {
    case ParamField::gamma_g: return m.gamma_g;
    case ParamField::gamma_b: return m.gamma_b;
    case ParamField::payout: return m.payout;
    case ParamField::restructure_value: return m.restructure_value;
    case ParamField::private_benefit: return m.private_benefit;
    case ParamField::setup_cost: return m.setup_cost;
    case ParamField::tau: return m.tau;
    case ParamField::kappa: return m.kappa;
    case ParamField::info_prob: return m.info_prob;
    case ParamField::cost_scale: return m.cost_scale;
  }
  return 0.0;
}

void set(ModelParams& m, ParamField f, double value) {
  switch (f) {
    case ParamField::gamma_g: m.gamma_g = value; return;
    case ParamField::gamma_b: m.gamma_b = value; return;
    case ParamField::payout: m.payout = value; return;
    case ParamField::restructure_value: m.restructure_value = value; return;
    case ParamField::private_benefit: m.private_benefit = value; return;
    case ParamField::setup_cost: m.setup_cost = value; return;
    case ParamField::tau: m.tau = value; return;
    case ParamField::kappa: m.kappa = value; return;
    case ParamField::info_prob: m.info_prob = value; return;
    case ParamField::cost_scale: m.cost_scale = value; return;
  }
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name;
  return {};
}

ValidationReport validate_params(const ModelParams& m) {
  ValidationReport rep;

  {
    std::string bad;
    for (ParamField f : all_param_fields) {
      if (!std::isfinite(get(m, f))) {
        if (!bad.empty()) bad += ", ";
        bad += to_string(f);
      }
    }
    rep.checks.push_back({"finite", bad.empty(),
                          bad.empty() ? "all parameters set" : "unset or non-finite: " + bad});
  }

  {
    std::string bad;
    auto need = [&](bool ok, const char* what) {
      if (!ok) {
        if (!bad.empty()) bad += "; ";
        bad += what;
      }
    };
    need(m.gamma_b >= 0.0 && m.gamma_b < 1.0, "gamma_b in [0, 1)");
    need(m.gamma_g > 0.0 && m.gamma_g < 1.0, "gamma_g in (0, 1)");
    need(m.gamma_g > m.gamma_b, "gamma_g > gamma_b");
    need(m.payout > 0.0, "payout > 0");
    need(m.restructure_value > 0.0 && m.restructure_value < m.payout,
         "restructure_value in (0, payout)");
    need(m.private_benefit > 0.0, "private_benefit > 0");
    need(m.setup_cost > 0.0, "setup_cost > 0");
    need(m.tau >= 0.0 && m.tau <= 1.0, "tau in [0, 1]");
    need(m.kappa > 0.0 && m.kappa < 1.0, "kappa in (0, 1)");
    need(m.info_prob > 0.0 && m.info_prob < 1.0, "info_prob in (0, 1)");
    need(m.cost_scale > 0.0, "cost_scale > 0");
    rep.checks.push_back({"ranges", bad.empty(), bad.empty() ? "in range" : bad});
  }

  const double l_b = restructuring_gain_bad(m);
  const double l_g = continuation_gain_good(m);

  rep.checks.push_back(
      {"assumption1", l_b > 0.0 && l_g > 0.0 && l_g > l_b,
       "restructuring gain (bad state) = " + fmt(l_b) +
           ", continuation gain (good state) = " + fmt(l_g) +
           "; both must be positive with the continuation gain larger"});

  rep.checks.push_back({"assumption2", m.setup_cost > m.restructure_value,
                        "setup_cost = " + fmt(m.setup_cost) + " must exceed restructure_value = " +
                            fmt(m.restructure_value)});

  {
    const double denom = 0.5 * (m.gamma_g + m.gamma_b);
    const double d1 = (m.setup_cost - 0.5 * (1.0 - m.gamma_b) * m.restructure_value) / denom;
    rep.checks.push_back(
        {"d1_feasible", d1 > m.restructure_value && d1 <= m.payout,
         "full-information face value = " + fmt(d1) + ", must lie in (restructure_value, payout]"});
  }

  rep.checks.push_back(
      {"lemma1_preferences",
       m.private_benefit > 0.0 && (1.0 - m.gamma_g) * m.restructure_value > 0.0 &&
           (1.0 - m.gamma_b) * m.restructure_value > 0.0,
       "manager strictly prefers continuation and the lender in control strictly prefers "
       "restructuring, in both states"});

  rep.checks.push_back(
      {"no_information_action", 0.5 * (l_g - l_b) > 0.0,
       "expected gain from continuing without any signal = " + fmt(0.5 * (l_g - l_b)) +
           "; must be positive so silence leaves the manager in control"});

  if (l_b > 0.0 && l_g > l_b) {
    rep.notes.push_back(
        "control shift on a breach signal raises surplus ex post only for error degrees below " +
        fmt(l_b / l_g) + "; larger false alarms get undone in renegotiation");
  }

  return rep;
}

DerivedConstants derived_constants(const ModelParams& m, const ErrorDensity& density) {
  DerivedConstants d;
  d.l_b = restructuring_gain_bad(m);
  d.l_g = continuation_gain_good(m);
  const double q = (1.0 - m.tau) * (1.0 - m.kappa);
  d.c1 = 0.5 * ((1.0 - m.gamma_b) * m.restructure_value - q * d.l_b);
  d.c2 = 0.5 * (m.private_benefit + m.tau * (1.0 - m.kappa) * d.l_b);
  d.c3 = 0.5 * ((1.0 - m.gamma_g) * m.restructure_value + q * d.l_g);
  d.c = (d.c3 - d.c1) * density.partial_x_moment(0.0, 1.0);
  return d;
}

}  // namespace covenant
