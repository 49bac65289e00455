#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <covenant/density.hpp>
#include <covenant/equilibrium.hpp>
#include <covenant/errors.hpp>
#include <covenant/model.hpp>

#include "oracle.hpp"
#include "test_helpers.hpp"

using namespace covenant;

namespace {
const double kBenchXStar = -0.255312038971719;  // frozen from an independent bisection
}

TEST_CASE("disclosure face value at the benchmark") {
  const auto m = covtest::bench1();
  const double d1 = solve_d1(m);
  CHECK(d1 == doctest::Approx(4.4).epsilon(1e-12));
}

TEST_CASE("disclosure face value satisfies break-even on random draws") {
  std::mt19937_64 rng(31001u);
  for (int i = 0; i < 100; ++i) {
    const auto m = covtest::random_valid_params(rng);
    const double d1 = solve_d1(m);
    const double lender = 0.5 * (m.gamma_g + m.gamma_b) * d1 +
                          0.5 * (1.0 - m.gamma_b) * m.restructure_value;
    CHECK(lender == doctest::Approx(m.setup_cost).epsilon(1e-12));
    CHECK(d1 > m.restructure_value);
    CHECK(d1 <= m.payout);
  }
}

TEST_CASE("disclosure face value hits the payout exactly at the funding cap") {
  auto m = covtest::bench1();
  m.setup_cost = 0.5 * (m.gamma_g + m.gamma_b) * m.payout +
                 0.5 * (1.0 - m.gamma_b) * m.restructure_value;  // 5.8
  CHECK(solve_d1(m) == doctest::Approx(m.payout).epsilon(1e-12));
  m.setup_cost += 1e-6;
  CHECK_THROWS_AS(solve_d1(m), SolverError);
}

TEST_CASE("nondisclosure face value at the benchmark") {
  const auto m = covtest::bench1();
  const auto density = ErrorDensity::uniform();
  const auto th = solve_threshold(m, density);
  CHECK(solve_d0(m, density, th.x_star) == doctest::Approx(4.754883734171).epsilon(1e-9));
  // rounded threshold input, exercised as its own case
  CHECK(solve_d0(m, density, -0.25531) == doctest::Approx(4.754883737963).epsilon(1e-9));
}

TEST_CASE("nondisclosure face value: rare-information limit") {
  auto m = covtest::bench1();
  m.info_prob = 1e-12;
  // pool is almost all uninformed; only the unconditional adjustment term
  // survives: d0 -> (K - (1-gamma_b) y / 2 - C) / ((gamma_g+gamma_b)/2)
  CHECK(solve_d0(m, ErrorDensity::uniform(), -0.9) ==
        doctest::Approx(4.5575).epsilon(1e-8));
}

TEST_CASE("full-disclosure pool makes d0 independent of information odds") {
  const auto density = ErrorDensity::uniform();
  auto m = covtest::bench1();
  const auto dc = derived_constants(m, density);
  const double expected = solve_d1(m) - 2.0 * dc.c / (m.gamma_g + m.gamma_b);
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 0.999}) {
    m.info_prob = p;
    // when every informed type discloses, the nondisclosure pool is purely
    // uninformed regardless of p, so only the C term shifts the face value
    CHECK(solve_d0(m, density, -1.0) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("indifference residual endpoints") {
  const auto m = covtest::bench1();
  const auto density = ErrorDensity::uniform();
  const auto dc = derived_constants(m, density);
  // at -1 the integrals vanish and only the uninformed term is left
  CHECK(threshold_residual(m, density, -1.0) ==
        doctest::Approx((1.0 - m.info_prob) * (-dc.c2 - dc.c)).epsilon(1e-12));
  CHECK(threshold_residual(m, density, 0.0) > 0.0);
  CHECK(std::abs(threshold_residual(m, density, -0.25531)) < 1e-4);
  CHECK_THROWS_AS(threshold_residual(m, density, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(threshold_residual(m, density, -1.0001), std::invalid_argument);
}

TEST_CASE("indifference residual endpoint identity on random draws") {
  std::mt19937_64 rng(31002u);
  const auto density = ErrorDensity::uniform();
  for (int i = 0; i < 50; ++i) {
    const auto m = covtest::random_valid_params(rng);
    const auto dc = derived_constants(m, density);
    CHECK(threshold_residual(m, density, -1.0) ==
          doctest::Approx((1.0 - m.info_prob) * (-dc.c2 - dc.c)).epsilon(1e-12));
  }
}

TEST_CASE("threshold at the benchmark") {
  const auto m = covtest::bench1();
  const auto th = solve_threshold(m, ErrorDensity::uniform());
  CHECK(th.corner == Corner::interior);
  CHECK(th.unique);
  REQUIRE(th.roots.size() == 1);
  CHECK(th.x_star == th.roots.back());
  CHECK(th.x_star == doctest::Approx(kBenchXStar).epsilon(1e-9));
  CHECK(std::abs(th.x_star - (-0.255306)) < 1e-5);
}

TEST_CASE("threshold under the triangular error density") {
  const auto th = solve_threshold(covtest::bench1(), ErrorDensity::triangular());
  CHECK(th.corner == Corner::interior);
  // frozen from an independent bisection of the residual under the tent density
  CHECK(th.x_star == doctest::Approx(-0.17226757187868275).epsilon(1e-9));
}

TEST_CASE("threshold walks to the corner as information becomes certain") {
  auto m = covtest::bench1();
  const auto density = ErrorDensity::uniform();
  const double frozen[][2] = {
      {0.9, -0.563700378778},
      {0.99, -0.841238360016},
      {0.999, -0.954350626785},
      {0.9999, -0.990739605363},
  };
  double prev = 0.0;
  for (const auto& row : frozen) {
    m.info_prob = row[0];
    const auto th = solve_threshold(m, density);
    CHECK(th.corner == Corner::interior);
    CHECK(th.x_star == doctest::Approx(row[1]).epsilon(1e-9));
    CHECK(th.x_star < prev);
    prev = th.x_star;
  }
}

TEST_CASE("nondisclosure face value rises alongside the vanishing pool") {
  auto m = covtest::bench1();
  m.info_prob = 0.9;
  const auto density = ErrorDensity::uniform();
  const auto th = solve_threshold(m, density);
  CHECK(solve_d0(m, density, th.x_star) == doctest::Approx(5.183543526502).epsilon(1e-9));
}

TEST_CASE("full-disclosure corner fixture") {
  const auto m = covtest::corner_params();
  const auto density = ErrorDensity::uniform();
  // J(-1) > 0: the lender gains from facing the pooled pnote even against the
  // worst informed type, so no interior indifference point exists
  CHECK(threshold_residual(m, density, -1.0) == doctest::Approx(0.0326875).epsilon(1e-12));
  const auto th = solve_threshold(m, density);
  CHECK(th.corner == Corner::full_disclosure);
  CHECK(th.x_star == -1.0);
  CHECK(th.unique);
  CHECK(th.roots.empty());
  CHECK(solve_d1(m) == doctest::Approx(4.515).epsilon(1e-12));
  CHECK(solve_d0(m, density, th.x_star) == doctest::Approx(4.84575).epsilon(1e-12));
}

TEST_CASE("disclosure gap at the benchmark") {
  const auto m = covtest::bench1();
  const auto density = ErrorDensity::uniform();
  const auto eq = solve_equilibrium(m, density);
  CHECK(delta(m, eq.d0, eq.d1, 0.5) == doctest::Approx(0.382441867085).epsilon(1e-9));
  CHECK(delta(m, eq.d0, eq.d1, 0.0) == doctest::Approx(0.17744186708534482).epsilon(1e-9));
  CHECK(std::abs(delta(m, eq.d0, eq.d1, eq.x_star)) < 1e-8);
  CHECK(delta(m, eq.d0, eq.d1, 1.0) > 0.0);  // worst false alarm still discloses
}

TEST_CASE("disclosure gap is strictly increasing in the error degree") {
  std::mt19937_64 rng(31003u);
  const auto density = ErrorDensity::uniform();
  for (int i = 0; i < 20; ++i) {
    const auto m = covtest::random_valid_params(rng);
    const auto eq = solve_equilibrium(m, density);
    double prev = delta(m, eq.d0, eq.d1, -1.0);
    for (int j = 1; j <= 40; ++j) {
      const double x = -1.0 + 2.0 * j / 40.0;
      const double cur = delta(m, eq.d0, eq.d1, x);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("equilibrium at the benchmark") {
  const auto m = covtest::bench1();
  const auto eq = solve_equilibrium(m, ErrorDensity::uniform());
  CHECK(eq.d1 == doctest::Approx(4.4).epsilon(1e-12));
  CHECK(eq.d0 == doctest::Approx(4.754883734171).epsilon(1e-9));
  CHECK(eq.x_star == doctest::Approx(kBenchXStar).epsilon(1e-9));
  CHECK(eq.corner == Corner::interior);
  CHECK(eq.unique);
  CHECK(eq.residual_j <= 1e-10);
  CHECK(eq.residual_delta <= 1e-8);
  CHECK(eq.d0 > eq.d1);
}

TEST_CASE("equilibrium invariants on random draws") {
  std::mt19937_64 rng(31004u);
  const auto density = ErrorDensity::uniform();
  for (int i = 0; i < 100; ++i) {
    const auto m = covtest::random_valid_params(rng);
    const auto eq = solve_equilibrium(m, density);
    CHECK(eq.d0 > eq.d1);  // the pooled note always prices in a premium
    CHECK(eq.d1 > m.restructure_value);
    CHECK(eq.d0 <= m.payout);
    CHECK(eq.x_star >= -1.0);
    CHECK(eq.x_star < 0.0);
    CHECK(eq.residual_j <= 1e-10);
    // independent break-even audit: expected lender value at d0 over the
    // nondisclosure pool, rebuilt from payoff cells and fixed-panel quadrature
    CHECK(std::abs(covtest::oracle::breakeven_gap(m, density, eq.d0, eq.x_star)) < 1e-9);
    const double l_b = restructuring_gain_bad(m);
    if (m.kappa <= 0.1 * std::min(1.0, m.private_benefit / l_b)) CHECK(eq.unique);
  }
}

TEST_CASE("equilibrium rejects invalid primitives by name") {
  auto m = covtest::bench1();
  m.private_benefit = 2.0;
  const auto density = ErrorDensity::uniform();
  try {
    solve_equilibrium(m, density);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("assumption1") != std::string::npos);
  }
}

TEST_CASE("equilibrium reports an infeasible nondisclosure note") {
  auto m = covtest::bench1();
  m.setup_cost = 5.79;  // d1 = 9.98 still fits, d0 would not
  CHECK_NOTHROW(solve_d1(m));
  CHECK_THROWS_AS(solve_equilibrium(m, ErrorDensity::uniform()), SolverError);
}

TEST_CASE("threshold rule is a best response on a fine grid") {
  const auto m = covtest::bench1();
  const auto density = ErrorDensity::uniform();
  const auto eq = solve_equilibrium(m, density);
  const auto report = verify_best_response(m, density, eq, 10001);
  CHECK(report.grid_size == 10001);
  CHECK(report.violations == 0);
}

TEST_CASE("best response check holds on random draws") {
  std::mt19937_64 rng(31005u);
  const auto density = ErrorDensity::uniform();
  for (int i = 0; i < 10; ++i) {
    const auto m = covtest::random_valid_params(rng);
    const auto eq = solve_equilibrium(m, density);
    CHECK(verify_best_response(m, density, eq, 2001).violations == 0);
  }
}
