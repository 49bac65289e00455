#include <covenant/cli.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <covenant/config.hpp>
#include <covenant/effort.hpp>
#include <covenant/equilibrium.hpp>
#include <covenant/errors.hpp>
#include <covenant/io.hpp>
#include <covenant/model.hpp>
#include <covenant/simulate.hpp>
#include <covenant/statics.hpp>

namespace covenant::cli {

namespace {

constexpr long long kMaxSweepPoints = 10000000;

struct CommonFlags {
  std::string config;
  std::vector<std::string> sets;
  int workers = 0;
};

RunConfig load_config(const CommonFlags& flags) {
  RunConfig cfg = flags.config.empty() ? RunConfig{} : parse_config_file(flags.config);
  for (const auto& s : flags.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects KEY=VALUE, got '" + s + "'");
    apply_setting(cfg, std::string_view(s).substr(0, eq), std::string_view(s).substr(eq + 1),
                  "--set " + s.substr(0, eq));
  }
  return cfg;
}

void require_format(const RunConfig& cfg, const char* subcommand, const char* expected) {
  if (!cfg.output.format.empty() && cfg.output.format != expected)
    throw ConfigError(std::string(subcommand) + " emits " + expected + " only, got output.format = " +
                      cfg.output.format);
}

int emit(const std::string& payload, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.output.path.empty()) {
    out << payload;
    return 0;
  }
  std::ofstream f(cfg.output.path, std::ios::binary);
  if (!f) {
    err << "error: cannot open output file '" << cfg.output.path << "'\n";
    return 2;
  }
  f << payload;
  f.flush();
  if (!f) {
    err << "error: write to '" << cfg.output.path << "' failed\n";
    return 2;
  }
  return 0;
}

void write_params(JsonWriter& w, const ModelParams& m) {
  w.key("params").begin_object();
  for (ParamField f : all_param_fields) w.kv(to_string(f), get(m, f));
  w.end_object();
}

void write_density(JsonWriter& w, const DensityConfig& cfg) {
  w.key("density").begin_object();
  w.kv("kind", cfg.kind);
  if (cfg.kind == "tabulated") {
    w.key("table").begin_array();
    for (const auto& k : ErrorDensity::normalized(cfg.table)) {
      w.begin_array().value(k.x).value(k.f).end_array();
    }
    w.end_array();
  }
  w.end_object();
}

void write_equilibrium(JsonWriter& w, const EquilibriumSolution& eq) {
  w.key("equilibrium").begin_object();
  w.kv("d1", eq.d1);
  w.kv("d0", eq.d0);
  w.kv("x_star", eq.x_star);
  w.kv("corner", to_string(eq.corner));
  w.kv("unique", eq.unique);
  w.kv("residual_j", eq.residual_j);
  w.kv("residual_delta", eq.residual_delta);
  w.key("roots").begin_array();
  for (double r : eq.roots) w.value(r);
  w.end_array();
  w.end_object();
}

int run_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rep = validate_params(cfg.params);

  JsonWriter w;
  w.begin_object();
  write_params(w, cfg.params);
  w.key("checks").begin_array();
  for (const auto& chk : rep.checks) {
    w.begin_object();
    w.kv("name", chk.name);
    w.kv("pass", chk.pass);
    w.kv("detail", chk.detail);
    w.end_object();
  }
  w.end_array();
  w.key("notes").begin_array();
  for (const auto& note : rep.notes) w.value(note);
  w.end_array();
  w.kv("all_pass", rep.all_pass());
  w.end_object();

  const int rc = emit(w.str(), cfg, out, err);
  if (rc != 0) return rc;
  if (!rep.all_pass()) {
    err << "validation failed: " << rep.first_failure() << "\n";
    return 1;
  }
  return 0;
}

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto density = build_density(cfg.density);
  const auto eq = solve_equilibrium(cfg.params, density);
  const auto eff = solve_effort(cfg.params, density);

  JsonWriter w;
  w.begin_object();
  write_params(w, cfg.params);
  write_density(w, cfg.density);
  write_equilibrium(w, eq);
  w.key("effort").begin_object();
  w.kv("p_fb", eff.p_fb);
  w.kv("p_star", eff.p_star);
  w.kv("w_fb", eff.w_fb);
  w.kv("unique", eff.unique);
  w.key("p_roots").begin_array();
  for (double r : eff.p_roots) w.value(r);
  w.end_array();
  w.key("mb_trace").begin_array();
  for (const auto& [p, mb] : eff.mb_trace) w.begin_array().value(p).value(mb).end_array();
  w.end_array();
  w.end_object();
  w.end_object();

  return emit(w.str(), cfg, out, err);
}

int run_simulate(const RunConfig& cfg, int workers, std::ostream& out, std::ostream& err) {
  const auto density = build_density(cfg.density);
  const auto eq = solve_equilibrium(cfg.params, density);
  const auto sim = simulate(cfg.params, density, eq, cfg.simulate.n, cfg.simulate.seed, workers);

  auto write_mean_se = [](JsonWriter& w, const char* name, const MeanSE& v) {
    w.key(name).begin_object();
    w.kv("mean", v.mean);
    w.kv("se", v.se);
    w.end_object();
  };

  JsonWriter w;
  w.begin_object();
  write_params(w, cfg.params);
  write_density(w, cfg.density);
  write_equilibrium(w, eq);
  w.key("simulation").begin_object();
  w.kv("n", sim.n);
  w.kv("seed", sim.seed);
  write_mean_se(w, "lender_mean_nondisclosure", sim.lender_mean_nondisclosure);
  write_mean_se(w, "lender_mean_disclosure", sim.lender_mean_disclosure);
  write_mean_se(w, "manager_mean", sim.manager_mean);
  write_mean_se(w, "reneg_freq", sim.reneg_freq);
  w.kv("n_disclosed", sim.n_disclosed);
  w.kv("n_nondisclosed", sim.n_nondisclosed);
  w.kv("reneg_freq_analytic", sim.reneg_freq_analytic);
  w.end_object();
  w.end_object();

  return emit(w.str(), cfg, out, err);
}

int run_statics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto density = build_density(cfg.density);
  const auto rep = sign_tables(cfg.params, density);

  JsonWriter w;
  w.begin_object();
  write_params(w, cfg.params);
  write_density(w, cfg.density);
  w.key("tables").begin_array();
  for (const auto& table : rep.tables) {
    w.begin_object();
    w.kv("target", to_string(table.target));
    w.key("rows").begin_object();
    for (const auto& [field, sign] : table.rows) w.kv(to_string(field), to_string(sign));
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("mismatches").begin_array();
  for (const auto& miss : rep.mismatches) w.value(miss);
  w.end_array();
  w.kv("pass", rep.pass);
  w.end_object();

  const int rc = emit(w.str(), cfg, out, err);
  if (rc != 0) return rc;
  if (!rep.pass) {
    err << "sign-table mismatch:";
    for (const auto& miss : rep.mismatches) err << "\n  " << miss;
    err << "\n";
    return 3;
  }
  return 0;
}

std::string sweep_row(const ModelParams& pt, const ErrorDensity& density) {
  std::string row;
  for (ParamField f : all_param_fields) {
    row += fmt_sig(get(pt, f));
    row += ',';
  }

  const auto rep = validate_params(pt);
  if (!rep.all_pass()) {
    row += ",,,,,,,invalid_params:" + rep.first_failure();
    return row;
  }
  try {
    const auto eq = solve_equilibrium(pt, density);
    const auto eff = solve_effort(pt, density);
    row += fmt_sig(eq.d1);
    row += ',';
    row += fmt_sig(eq.d0);
    row += ',';
    row += fmt_sig(eq.x_star);
    row += ',';
    row += to_string(eq.corner);
    row += ',';
    row += eq.unique && eff.unique ? "true" : "false";
    row += ',';
    row += fmt_sig(eff.p_fb);
    row += ',';
    row += fmt_sig(eff.p_star);
    row += ",ok";
  } catch (const SolverError&) {
    row += ",,,,,,,solver_error";
  }
  return row;
}

int run_sweep(const RunConfig& cfg, int workers, std::ostream& out, std::ostream& err) {
  if (cfg.sweep.empty())
    throw ConfigError("sweep requires at least one sweep.<param> = start:stop:steps range");
  const auto density = build_density(cfg.density);

  long long total = 1;
  for (const auto& spec : cfg.sweep) {
    total *= spec.steps;
    if (total > kMaxSweepPoints)
      throw ConfigError("sweep grid exceeds " + std::to_string(kMaxSweepPoints) + " points");
  }

  // decode a flat index into grid coordinates; the first configured range is
  // the outermost (slowest) axis
  auto point_at = [&](long long idx) {
    ModelParams pt = cfg.params;
    for (std::size_t d = cfg.sweep.size(); d-- > 0;) {
      const auto& spec = cfg.sweep[d];
      const long long j = idx % spec.steps;
      idx /= spec.steps;
      const double v =
          spec.start + (spec.stop - spec.start) * double(j) / double(spec.steps - 1);
      set(pt, spec.field, v);
    }
    return pt;
  };

  std::vector<std::string> rows(static_cast<std::size_t>(total));
  auto fill = [&](long long i) { rows[std::size_t(i)] = sweep_row(point_at(i), density); };

  int nworkers = workers > 0 ? workers : int(std::thread::hardware_concurrency());
  if (nworkers < 1) nworkers = 1;
  nworkers = int(std::min<long long>(nworkers, total));

  if (nworkers == 1) {
    for (long long i = 0; i < total; ++i) fill(i);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nworkers));
    for (int wkr = 0; wkr < nworkers; ++wkr)
      pool.emplace_back([&] {
        for (long long i = next.fetch_add(1); i < total; i = next.fetch_add(1)) fill(i);
      });
    for (auto& t : pool) t.join();
  }

  std::string payload =
      "gamma_g,gamma_b,payout,restructure_value,private_benefit,setup_cost,tau,kappa,"
      "info_prob,cost_scale,d1,d0,x_star,corner,unique,p_fb,p_star,status\n";
  for (const auto& row : rows) {
    payload += row;
    payload += '\n';
  }
  return emit(payload, cfg, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"equilibrium solver for the covenant accounting adjustment game"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto add_common = [&](CLI::App* sub, bool with_workers) {
    sub->add_option("--config", flags.config, "configuration file (key = value lines)");
    sub->add_option("--set", flags.sets, "override KEY=VALUE (repeatable)");
    if (with_workers)
      sub->add_option("--workers", flags.workers, "worker threads, 0 = hardware default");
  };

  auto* cmd_check = app.add_subcommand("check", "validate parameters and print the report");
  auto* cmd_solve =
      app.add_subcommand("solve", "solve the disclosure equilibrium and the learning effort");
  auto* cmd_sweep = app.add_subcommand("sweep", "solve over a parameter grid, emit CSV");
  auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo the solved equilibrium");
  auto* cmd_statics = app.add_subcommand("statics", "check comparative-statics sign tables");
  add_common(cmd_check, false);
  add_common(cmd_solve, false);
  add_common(cmd_sweep, true);
  add_common(cmd_simulate, true);
  add_common(cmd_statics, false);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("covsolve");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_store.size());
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const RunConfig cfg = load_config(flags);
    if (cmd_check->parsed()) {
      require_format(cfg, "check", "json");
      return run_check(cfg, out, err);
    }
    if (cmd_solve->parsed()) {
      require_format(cfg, "solve", "json");
      return run_solve(cfg, out, err);
    }
    if (cmd_sweep->parsed()) {
      require_format(cfg, "sweep", "csv");
      return run_sweep(cfg, flags.workers, out, err);
    }
    if (cmd_simulate->parsed()) {
      require_format(cfg, "simulate", "json");
      return run_simulate(cfg, flags.workers, out, err);
    }
    require_format(cfg, "statics", "json");
    return run_statics(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace covenant::cli
