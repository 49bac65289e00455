#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <covenant/density.hpp>
#include <covenant/model.hpp>

namespace covenant {

// Malformed configuration input; the message is line-anchored
// ("path:line: why") when it comes from a file.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  ParamField field;
  double start;
  double stop;
  int steps;  // >= 2, endpoints included
};

struct DensityConfig {
  std::string kind = "uniform";
  std::vector<DensityKnot> table;  // tabulated kind only; normalized on build
};

struct SimulateConfig {
  long long n = 1000000;
  std::uint64_t seed = 1;
};

struct OutputConfig {
  std::string path;    // empty -> stdout
  std::string format;  // empty -> subcommand default
};

struct RunConfig {
  ModelParams params;
  DensityConfig density;
  std::vector<SweepSpec> sweep;  // file order = outer-to-inner grid order
  SimulateConfig simulate;
  OutputConfig output;
};

// key = value lines, # comments, blank lines ignored. Keys: the ten model
// parameter names, density.kind, density.table, sweep.<param>, simulate.n,
// simulate.seed, output.path, output.format.
RunConfig parse_config_file(const std::string& path);

// Applies one key=value pair (shared by the file parser and --set flags);
// `where` prefixes error messages.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                   const std::string& where);

// Materializes the configured density; tabulated tables are normalized to
// unit mass first.
ErrorDensity build_density(const DensityConfig& cfg);

}  // namespace covenant
