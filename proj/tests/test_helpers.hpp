#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <covenant/cli.hpp>
#include <covenant/equilibrium.hpp>
#include <covenant/model.hpp>

namespace covtest {

// Reference parameter set used throughout: every golden number in the suite
// was frozen from an independent implementation evaluated at this point.
inline covenant::ModelParams bench1() {
  covenant::ModelParams m;
  m.gamma_g = 0.8;
  m.gamma_b = 0.2;
  m.payout = 10.0;
  m.restructure_value = 2.0;
  m.private_benefit = 1.2;
  m.setup_cost = 3.0;
  m.tau = 0.5;
  m.kappa = 0.05;
  m.info_prob = 0.5;
  m.cost_scale = 0.5;
  return m;
}

// Forces the always-disclose corner: the gain ordering of the standing
// assumptions is deliberately violated (restructuring gain far above the
// continuation gain) so that withholding has negative option value even at
// the worst overstatement. Only the threshold-level machinery accepts it.
inline covenant::ModelParams corner_params() {
  covenant::ModelParams m;
  m.gamma_g = 0.99;
  m.gamma_b = 0.01;
  m.payout = 10.0;
  m.restructure_value = 1.5;
  m.private_benefit = 0.2;
  m.setup_cost = 3.0;
  m.tau = 0.0;
  m.kappa = 0.9;
  m.info_prob = 0.5;
  m.cost_scale = 0.5;
  return m;
}

// Uniform draw from a parameter region where every validation check passes
// and both solvers stay comfortably interior:
//   gamma_b in [0.05, 0.5], gamma_g in [gamma_b + 0.3, 0.95]
//   y in [0.5, 4], Y = y * U(3, 6)
//   X strictly inside the gain-ordering window (10%..90% of it)
//   tau in [0.05, 0.95], kappa in [0.01, 0.15], p in [0.05, 0.95]
//   K between y and the Y-feasibility cap, biased low so D0 stays below Y
//   c0 proportional to y (payoffs are money-homogeneous) for an interior FOC
inline covenant::ModelParams random_valid_params(std::mt19937_64& rng) {
  auto unit = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
  auto range = [&](double lo, double hi) { return lo + (hi - lo) * unit(); };

  covenant::ModelParams m;
  for (;;) {
    m.gamma_b = range(0.05, 0.5);
    m.gamma_g = range(m.gamma_b + 0.3, 0.95);
    m.restructure_value = range(0.5, 4.0);
    m.payout = m.restructure_value * range(3.0, 6.0);
    const double x_lo = 0.5 * (2.0 - m.gamma_g - m.gamma_b) * m.restructure_value;
    const double x_hi = (1.0 - m.gamma_b) * m.restructure_value;
    m.private_benefit = x_lo + range(0.1, 0.9) * (x_hi - x_lo);
    m.tau = range(0.05, 0.95);
    m.kappa = range(0.01, 0.15);
    m.info_prob = range(0.05, 0.95);
    m.cost_scale = m.restructure_value * range(0.4, 0.9);

    const double k_max = 0.5 * (m.gamma_g + m.gamma_b) * m.payout +
                         0.5 * (1.0 - m.gamma_b) * m.restructure_value;
    if (k_max < 1.5 * m.restructure_value) continue;  // not enough face-value headroom
    m.setup_cost = m.restructure_value + range(0.1, 0.6) * (k_max - m.restructure_value);

    if (!covenant::validate_params(m).all_pass()) continue;

    // The effort solver scans beliefs up to p = 1 - 1e-6, and the pooled face
    // value grows with p, so the draw must stay feasible at the top of the
    // scan, with a small margin
    auto hi = m;
    hi.info_prob = 1.0 - 1e-6;
    try {
      const auto density = covenant::ErrorDensity::uniform();
      const auto th = covenant::solve_threshold(hi, density);
      const double d0_hi = covenant::solve_d0(hi, density, th.x_star);
      if (d0_hi > m.payout - 0.02 * (m.payout - m.restructure_value)) continue;
    } catch (...) {
      continue;
    }
    return m;
  }
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = covenant::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory removed on scope exit.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    static std::atomic<unsigned> counter{0};
    path = base / ("covenant_test_" + std::to_string(::getpid()) + "_" +
                   std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    std::ofstream f(p, std::ios::binary);
    f << content;
    return p.string();
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// --set arguments covering a full parameter set
inline std::vector<std::string> param_args(const covenant::ModelParams& m) {
  std::vector<std::string> args;
  for (covenant::ParamField f : covenant::all_param_fields) {
    std::ostringstream kv;
    kv.precision(17);
    kv << covenant::to_string(f) << "=" << covenant::get(m, f);
    args.emplace_back("--set");
    args.push_back(kv.str());
  }
  return args;
}

}  // namespace covtest
