#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include <covenant/density.hpp>
#include <covenant/model.hpp>

#include "test_helpers.hpp"

using namespace covenant;

TEST_CASE("benchmark parameters pass every check") {
  const auto m = covtest::bench1();
  const auto rep = validate_params(m);
  CHECK(rep.all_pass());
  CHECK(rep.checks.size() == 7);
  CHECK(rep.first_failure().empty());
  CHECK(restructuring_gain_bad(m) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(continuation_gain_good(m) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("gain ordering failure is caught") {
  auto m = covtest::bench1();
  m.private_benefit = 2.0;  // restructuring gain in the bad state goes negative
  const auto rep = validate_params(m);
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.first_failure() == "assumption1");
}

TEST_CASE("setup cost below restructure value is caught") {
  auto m = covtest::bench1();
  m.setup_cost = 1.5;
  const auto rep = validate_params(m);
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.first_failure() == "assumption2");
}

TEST_CASE("unset and out-of-range fields are caught") {
  {
    ModelParams m;  // everything NaN
    const auto rep = validate_params(m);
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.first_failure() == "finite");
  }
  {
    auto m = covtest::bench1();
    m.kappa = 0.0;
    CHECK(validate_params(m).first_failure() == "ranges");
  }
  {
    auto m = covtest::bench1();
    m.info_prob = 1.0;
    CHECK(validate_params(m).first_failure() == "ranges");
  }
  {
    auto m = covtest::bench1();
    m.restructure_value = m.payout;  // y must stay below Y
    CHECK(validate_params(m).first_failure() == "ranges");
  }
  {
    auto m = covtest::bench1();
    m.gamma_b = m.gamma_g;
    CHECK(validate_params(m).first_failure() == "ranges");
  }
}

TEST_CASE("infeasible face value is caught") {
  auto m = covtest::bench1();
  m.setup_cost = 5.81;  // required face value would exceed the payout
  const auto rep = validate_params(m);
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.first_failure() == "d1_feasible");
}

TEST_CASE("state-contingent preference check") {
  // with both gains positive but reversed ordering, the adjustment is
  // pointless even though each party's ex-post preference is intact
  auto m = covtest::bench1();
  m.private_benefit = 0.9;  // L_B = 0.5 > L_G = 0.3
  const auto rep = validate_params(m);
  CHECK_FALSE(rep.all_pass());
  bool lemma_ok = false, no_info_ok = true, a1_ok = true;
  for (const auto& c : rep.checks) {
    if (c.name == "lemma1_preferences") lemma_ok = c.pass;
    if (c.name == "no_information_action") no_info_ok = c.pass;
    if (c.name == "assumption1") a1_ok = c.pass;
  }
  CHECK(lemma_ok);        // preferences themselves are fine
  CHECK_FALSE(no_info_ok);  // but uninformative adjustment would destroy value
  CHECK_FALSE(a1_ok);
}

TEST_CASE("validation report carries the error-degree note") {
  const auto rep = validate_params(covtest::bench1());
  REQUIRE_FALSE(rep.notes.empty());
  bool found = false;
  for (const auto& n : rep.notes)
    if (n.find("control shift") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("derived constants at the benchmark") {
  const auto d = derived_constants(covtest::bench1(), ErrorDensity::uniform());
  CHECK(d.l_b == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(d.l_g == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(d.c1 == doctest::Approx(0.705).epsilon(1e-15));
  CHECK(d.c2 == doctest::Approx(0.695).epsilon(1e-15));
  CHECK(d.c3 == doctest::Approx(0.39).epsilon(1e-15));
  CHECK(d.c == doctest::Approx(-0.07875).epsilon(1e-12));
}

TEST_CASE("constant identities hold on randomized parameters") {
  std::mt19937_64 rng(20260816u);
  const auto density = ErrorDensity::uniform();
  for (int i = 0; i < 200; ++i) {
    const auto m = covtest::random_valid_params(rng);
    const auto d = derived_constants(m, density);
    // c2 - c1 = -kappa L_B / 2 exactly
    CHECK(std::abs(d.c2 - d.c1 + 0.5 * m.kappa * d.l_b) < 1e-14);
    // c3 - c1 = (gap) y (q - 1) / 2 with q = (1-tau)(1-kappa)
    const double q = (1.0 - m.tau) * (1.0 - m.kappa);
    const double gap = (m.gamma_g - m.gamma_b) * m.restructure_value;
    CHECK(d.c3 - d.c1 == doctest::Approx(0.5 * gap * (q - 1.0)).epsilon(1e-12));
    // L_G + L_B collapses to the same gap
    CHECK(d.l_g + d.l_b == doctest::Approx(gap).epsilon(1e-12));
    CHECK(d.c < 0.0);
    CHECK(d.c1 > 0.0);
    CHECK(d.c1 >= 0.5 * m.private_benefit - 1e-12);
  }
}

TEST_CASE("no surplus leaks when the lender keeps everything") {
  // tau = kappa = 0: the lender captures the whole renegotiation gain, the
  // withholding motive constant vanishes and c1 = X / 2
  auto m = covtest::bench1();
  m.tau = 0.0;
  m.kappa = 0.0;
  const auto d = derived_constants(m, ErrorDensity::uniform());
  CHECK(std::abs(d.c) < 1e-15);
  CHECK(d.c1 == doctest::Approx(0.5 * m.private_benefit).epsilon(1e-15));
  CHECK(d.c2 == doctest::Approx(0.5 * m.private_benefit).epsilon(1e-15));
}

TEST_CASE("parameter field names round-trip") {
  const auto m = covtest::bench1();
  for (auto f : all_param_fields) {
    const std::string name = to_string(f);
    const auto parsed = param_field_from_string(name);
    REQUIRE(parsed.has_value());
    CHECK(*parsed == f);
    ModelParams copy = m;
    set(copy, f, 0.123);
    CHECK(get(copy, f) == 0.123);
  }
  CHECK_FALSE(param_field_from_string("volatility").has_value());
}
