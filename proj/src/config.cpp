#include <covenant/config.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string>

namespace covenant {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, const std::string& where, const char* what) {
  const auto t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(where + ": " + what + " is not a number: '" + std::string(t) + "'");
  return v;
}

long long parse_integer(std::string_view text, const std::string& where, const char* what) {
  const auto t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(where + ": " + what + " is not an integer: '" + std::string(t) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = s.find(sep);
    if (pos == std::string_view::npos) {
      parts.push_back(s);
      return parts;
    }
    parts.push_back(s.substr(0, pos));
    s.remove_prefix(pos + 1);
  }
}

// "x:f, x:f, ..." pairs for a tabulated density
std::vector<DensityKnot> parse_table(std::string_view text, const std::string& where) {
  std::vector<DensityKnot> knots;
  for (auto part : split(text, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto pair = split(part, ':');
    if (pair.size() != 2)
      throw ConfigError(where + ": density.table entries are 'x:f' pairs, got '" +
                        std::string(part) + "'");
    knots.push_back({parse_number(pair[0], where, "table abscissa"),
                     parse_number(pair[1], where, "table value")});
  }
  if (knots.size() < 2)
    throw ConfigError(where + ": density.table needs at least two 'x:f' pairs");
  return knots;
}

// "start:stop:steps"
SweepSpec parse_sweep(ParamField field, std::string_view text, const std::string& where) {
  const auto parts = split(text, ':');
  if (parts.size() != 3)
    throw ConfigError(where + ": sweep values are 'start:stop:steps', got '" + std::string(text) +
                      "'");
  SweepSpec spec;
  spec.field = field;
  spec.start = parse_number(parts[0], where, "sweep start");
  spec.stop = parse_number(parts[1], where, "sweep stop");
  const long long steps = parse_integer(parts[2], where, "sweep steps");
  if (steps < 2 || steps > 1000000)
    throw ConfigError(where + ": sweep steps must be in [2, 1000000]");
  spec.steps = int(steps);
  return spec;
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value,
                   const std::string& where) {
  key = trim(key);
  value = trim(value);
  if (key.empty()) throw ConfigError(where + ": empty key");

  if (const auto field = param_field_from_string(key)) {
    set(cfg.params, *field, parse_number(value, where, to_string(*field)));
    return;
  }
  if (key == "density.kind") {
    if (value != "uniform" && value != "triangular" && value != "tabulated")
      throw ConfigError(where + ": density.kind must be uniform, triangular, or tabulated");
    cfg.density.kind = std::string(value);
    return;
  }
  if (key == "density.table") {
    cfg.density.table = parse_table(value, where);
    return;
  }
  if (key.rfind("sweep.", 0) == 0) {
    const auto name = key.substr(6);
    const auto field = param_field_from_string(name);
    if (!field)
      throw ConfigError(where + ": unknown sweep parameter '" + std::string(name) + "'");
    const bool dup = std::any_of(cfg.sweep.begin(), cfg.sweep.end(),
                                 [&](const SweepSpec& s) { return s.field == *field; });
    if (dup)
      throw ConfigError(where + ": sweep over '" + std::string(name) + "' given twice");
    cfg.sweep.push_back(parse_sweep(*field, value, where));
    return;
  }
  if (key == "simulate.n") {
    const long long n = parse_integer(value, where, "simulate.n");
    if (n <= 0) throw ConfigError(where + ": simulate.n must be positive");
    cfg.simulate.n = n;
    return;
  }
  if (key == "simulate.seed") {
    const long long s = parse_integer(value, where, "simulate.seed");
    if (s < 0) throw ConfigError(where + ": simulate.seed must be nonnegative");
    cfg.simulate.seed = std::uint64_t(s);
    return;
  }
  if (key == "output.path") {
    cfg.output.path = std::string(value);
    return;
  }
  if (key == "output.format") {
    if (value != "json" && value != "csv")
      throw ConfigError(where + ": output.format must be json or csv");
    cfg.output.format = std::string(value);
    return;
  }
  throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos)
      text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    const std::string where = path + ":" + std::to_string(lineno);
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(where + ": expected 'key = value'");
    apply_setting(cfg, text.substr(0, eq), text.substr(eq + 1), where);
  }
  return cfg;
}

ErrorDensity build_density(const DensityConfig& cfg) {
  if (cfg.kind == "uniform") return ErrorDensity::uniform();
  if (cfg.kind == "triangular") return ErrorDensity::triangular();
  if (cfg.kind == "tabulated") {
    if (cfg.table.empty())
      throw ConfigError("density.kind = tabulated requires density.table");
    return ErrorDensity::tabulated(ErrorDensity::normalized(cfg.table));
  }
  throw ConfigError("unknown density.kind '" + cfg.kind + "'");
}

}  // namespace covenant
