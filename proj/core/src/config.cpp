#include "erpic/config.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "erpic/errors.hpp"
#include "erpic/format.hpp"
#include "erpic/regime.hpp"

namespace erpic {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_quotes(std::string v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

// Collects every violation; `line` 0 marks issues with no single source line
// (missing keys, override strings).
class Extractor {
public:
  std::map<std::string, Entry, std::less<>> entries;
  std::vector<ConfigIssue> issues;

  void add_issue(int line, std::string msg) { issues.push_back({line, std::move(msg)}); }

  const Entry* find(std::string_view key) {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  std::string get_string(std::string_view key, std::string fallback, bool required) {
    const Entry* e = find(key);
    if (e == nullptr) {
      if (required) add_issue(0, "missing required key '" + std::string(key) + "'");
      return fallback;
    }
    return e->value;
  }

  double get_number(std::string_view key, double fallback, bool required) {
    const Entry* e = find(key);
    if (e == nullptr) {
      if (required) add_issue(0, "missing required key '" + std::string(key) + "'");
      return fallback;
    }
    char* end = nullptr;
    const double v = std::strtod(e->value.c_str(), &end);
    if (end == e->value.c_str() || *end != '\0' || !std::isfinite(v)) {
      add_issue(e->line, "key '" + std::string(key) + "': expected a number, got '" + e->value + "'");
      return fallback;
    }
    return v;
  }

  long long get_integer(std::string_view key, long long fallback, bool required) {
    const Entry* e = find(key);
    if (e == nullptr) {
      if (required) add_issue(0, "missing required key '" + std::string(key) + "'");
      return fallback;
    }
    char* end = nullptr;
    const long long v = std::strtoll(e->value.c_str(), &end, 10);
    if (end == e->value.c_str() || *end != '\0') {
      add_issue(e->line, "key '" + std::string(key) + "': expected an integer, got '" + e->value + "'");
      return fallback;
    }
    return v;
  }

  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback, bool required) {
    const Entry* e = find(key);
    if (e == nullptr) {
      if (required) add_issue(0, "missing required key '" + std::string(key) + "'");
      return fallback;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(e->value.c_str(), &end, 10);
    if (end == e->value.c_str() || *end != '\0') {
      add_issue(e->line, "key '" + std::string(key) + "': expected an unsigned integer, got '" +
                             e->value + "'");
      return fallback;
    }
    return v;
  }

  bool get_bool(std::string_view key, bool fallback) {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    add_issue(e->line, "key '" + std::string(key) + "': expected true or false, got '" + e->value + "'");
    return fallback;
  }

  std::vector<double> get_number_list(std::string_view key) {
    std::vector<double> out;
    const Entry* e = find(key);
    if (e == nullptr) return out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      char* end = nullptr;
      const double v = std::strtod(item.c_str(), &end);
      if (end == item.c_str() || *end != '\0' || !std::isfinite(v)) {
        add_issue(e->line, "key '" + std::string(key) + "': bad list entry '" + item + "'");
        continue;
      }
      out.push_back(v);
    }
    return out;
  }

  void report_unknown() {
    for (const auto& [key, entry] : entries) {
      if (!entry.consumed) add_issue(entry.line, "unknown key '" + key + "'");
    }
  }
};

void parse_lines(std::string_view text, Extractor& ex) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      ex.add_issue(line_no, "expected 'key = value', got '" + stripped + "'");
      continue;
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = strip_quotes(trim(std::string_view(stripped).substr(eq + 1)));
    if (key.empty()) {
      ex.add_issue(line_no, "empty key");
      continue;
    }
    auto [it, inserted] = ex.entries.emplace(std::move(key), Entry{std::move(value), line_no});
    if (!inserted) {
      ex.add_issue(line_no, "duplicate key '" + it->first + "' (first set on line " +
                                std::to_string(it->second.line) + ")");
    }
  }
}

}  // namespace

Grid2D SimulationConfig::make_grid() const {
  return Grid2D::make(grid.nx, grid.ny, grid.x_lo, grid.x_hi, grid.y_lo, grid.y_hi);
}

InitialDistribution SimulationConfig::make_distribution() const {
  if (init.distribution == DistributionKind::TwoBump) {
    return InitialDistribution::two_bump(init.eta, init.k, grid.x_lo, grid.x_hi, grid.y_lo,
                                         grid.y_hi, init.v_max);
  }
  return InitialDistribution::diocotron(init.alpha, init.l, init.r_minus, init.r_plus, grid.x_lo,
                                        grid.x_hi, grid.y_lo, grid.y_hi, init.v_max);
}

MagneticModel SimulationConfig::make_magnetic() const {
  switch (magnetic.model) {
    case MagneticKind::Example1:
      return MagneticModel::sinusoidal2d(1.0);
    case MagneticKind::Uniform:
      return MagneticModel::uniform2d(1.0);
    case MagneticKind::CustomConstant:
      return MagneticModel::uniform2d(magnetic.b0);
  }
  return MagneticModel::uniform2d(1.0);
}

RegimeCoefficients SimulationConfig::make_coeffs() const {
  return regime_coefficients(regime, eps);
}

double SimulationConfig::horizon() const {
  return regime == Regime::Fluid ? t_final : t_final / eps;
}

long SimulationConfig::step_count() const {
  return static_cast<long>(std::floor(horizon() / dt + 1e-9));
}

ParseResult parse_config(std::string_view text) {
  return parse_config(text, std::span<const std::string>{});
}

ParseResult parse_config(std::string_view text, std::span<const std::string> overrides) {
  Extractor ex;
  parse_lines(text, ex);
  for (const auto& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos) {
      ex.add_issue(0, "override '" + ov + "': expected key=value");
      continue;
    }
    std::string key = trim(std::string_view(ov).substr(0, eq));
    std::string value = strip_quotes(trim(std::string_view(ov).substr(eq + 1)));
    ex.entries[key] = Entry{std::move(value), 0};
  }

  SimulationConfig cfg;

  const std::string regime_s = ex.get_string("regime", "fluid", true);
  if (regime_s == "fluid") cfg.regime = Regime::Fluid;
  else if (regime_s == "larmor") cfg.regime = Regime::LarmorRescaled;
  else if (regime_s == "diffusion") cfg.regime = Regime::DiffusionRescaled;
  else ex.add_issue(0, "regime: expected fluid|larmor|diffusion, got '" + regime_s + "'");

  cfg.eps = ex.get_number("eps", 1.0, true);
  cfg.dt = ex.get_number("dt", 0.1, true);
  cfg.t_final = ex.get_number("t_final", 1.0, true);

  const std::string scheme_s = ex.get_string("scheme", "RS2", true);
  if (scheme_s == "RS1") cfg.scheme = Scheme::RS1;
  else if (scheme_s == "RS2") cfg.scheme = Scheme::RS2;
  else if (scheme_s == "RK4REF") cfg.scheme = Scheme::RK4Ref;
  else ex.add_issue(0, "scheme: expected RS1|RS2|RK4REF, got '" + scheme_s + "'");

  cfg.grid.nx = static_cast<int>(ex.get_integer("grid.nx", 0, true));
  cfg.grid.ny = static_cast<int>(ex.get_integer("grid.ny", 0, true));
  cfg.grid.x_lo = ex.get_number("grid.x_lo", 0.0, true);
  cfg.grid.x_hi = ex.get_number("grid.x_hi", 0.0, true);
  cfg.grid.y_lo = ex.get_number("grid.y_lo", 0.0, true);
  cfg.grid.y_hi = ex.get_number("grid.y_hi", 0.0, true);

  const std::string dist_s = ex.get_string("init.distribution", "twobump", true);
  if (dist_s == "twobump") cfg.init.distribution = DistributionKind::TwoBump;
  else if (dist_s == "diocotron") cfg.init.distribution = DistributionKind::Diocotron;
  else ex.add_issue(0, "init.distribution: expected twobump|diocotron, got '" + dist_s + "'");

  cfg.init.particles = static_cast<std::size_t>(ex.get_integer("init.particles", 0, true));
  cfg.init.seed = ex.get_u64("init.seed", 0, true);
  cfg.init.eta = ex.get_number("init.eta", cfg.init.eta, false);
  cfg.init.k = ex.get_number("init.k", cfg.init.k, false);
  cfg.init.alpha = ex.get_number("init.alpha", cfg.init.alpha, false);
  cfg.init.l = static_cast<int>(ex.get_integer("init.l", cfg.init.l, false));
  cfg.init.r_minus = ex.get_number("init.rminus", cfg.init.r_minus, false);
  cfg.init.r_plus = ex.get_number("init.rplus", cfg.init.r_plus, false);
  cfg.init.v_max = ex.get_number("init.vmax", cfg.init.v_max, false);

  const std::string mag_s = ex.get_string("magnetic.model", "uniform", true);
  if (mag_s == "example1") cfg.magnetic.model = MagneticKind::Example1;
  else if (mag_s == "uniform") cfg.magnetic.model = MagneticKind::Uniform;
  else if (mag_s == "custom-constant") cfg.magnetic.model = MagneticKind::CustomConstant;
  else ex.add_issue(0, "magnetic.model: expected example1|uniform|custom-constant, got '" + mag_s + "'");
  cfg.magnetic.b0 = ex.get_number("magnetic.b0", cfg.magnetic.b0, false);

  cfg.output.dir = ex.get_string("output.dir", cfg.output.dir, false);
  cfg.output.snapshots = ex.get_number_list("output.snapshots");
  cfg.output.energy = ex.get_bool("output.energy", cfg.output.energy);
  cfg.output.rho = ex.get_bool("output.rho", cfg.output.rho);
  cfg.output.rho_v = ex.get_bool("output.rho_v", cfg.output.rho_v);
  cfg.output.chi = ex.get_bool("output.chi", cfg.output.chi);

  ex.report_unknown();

  // invariants
  if (!(cfg.eps > 0.0 && cfg.eps <= 1.0)) ex.add_issue(0, "eps: invariant 0 < eps <= 1 violated");
  if (!(cfg.dt > 0.0)) ex.add_issue(0, "dt: must be positive");
  if (!(cfg.t_final > 0.0)) ex.add_issue(0, "t_final: must be positive");
  if (cfg.grid.nx < 8 || cfg.grid.ny < 8) {
    ex.add_issue(0, "grid: nx and ny must be >= 8 (quintic stencil spans 6 cells)");
  }
  if (!(cfg.grid.x_lo < cfg.grid.x_hi) || !(cfg.grid.y_lo < cfg.grid.y_hi)) {
    ex.add_issue(0, "grid: bounds must satisfy x_lo < x_hi and y_lo < y_hi");
  }
  if (cfg.init.particles < 1) ex.add_issue(0, "init.particles: must be >= 1");
  if (cfg.init.distribution == DistributionKind::TwoBump) {
    if (!(cfg.init.k > 0.0)) ex.add_issue(0, "init.k: must be positive");
    if (std::abs(cfg.init.eta) > 1.0) ex.add_issue(0, "init.eta: |eta| <= 1 required for f0 >= 0");
  } else {
    if (!(cfg.init.r_minus >= 0.0) || !(cfg.init.r_minus < cfg.init.r_plus)) {
      ex.add_issue(0, "init.rminus/rplus: require 0 <= rminus < rplus");
    }
    if (std::abs(cfg.init.alpha) > 1.0) ex.add_issue(0, "init.alpha: |alpha| <= 1 required");
    if (cfg.init.l < 0) ex.add_issue(0, "init.l: must be non-negative");
  }
  if (!(cfg.init.v_max > 0.0)) ex.add_issue(0, "init.vmax: must be positive");
  if (cfg.magnetic.model == MagneticKind::CustomConstant && !(cfg.magnetic.b0 > 0.0)) {
    ex.add_issue(0, "magnetic.b0: must be positive for custom-constant");
  }
  for (double t : cfg.output.snapshots) {
    if (t < 0.0) ex.add_issue(0, "output.snapshots: times must be non-negative");
  }
  if (cfg.output.dir.empty()) ex.add_issue(0, "output.dir: must not be empty");

  ParseResult result;
  result.issues = std::move(ex.issues);
  if (result.issues.empty()) result.config = cfg;
  return result;
}

SimulationConfig parse_config_or_throw(std::string_view text) {
  ParseResult r = parse_config(text);
  if (r.ok()) return *r.config;
  std::string msg = "invalid config:";
  for (const auto& issue : r.issues) {
    msg += "\n  ";
    if (issue.line > 0) msg += "line " + std::to_string(issue.line) + ": ";
    msg += issue.message;
  }
  throw ConfigError(msg);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Fluid: return "fluid";
    case Regime::LarmorRescaled: return "larmor";
    case Regime::DiffusionRescaled: return "diffusion";
  }
  return "fluid";
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::RS1: return "RS1";
    case Scheme::RS2: return "RS2";
    case Scheme::RK4Ref: return "RK4REF";
  }
  return "RS2";
}

std::string to_string(DistributionKind d) {
  return d == DistributionKind::TwoBump ? "twobump" : "diocotron";
}

std::string to_string(MagneticKind m) {
  switch (m) {
    case MagneticKind::Example1: return "example1";
    case MagneticKind::Uniform: return "uniform";
    case MagneticKind::CustomConstant: return "custom-constant";
  }
  return "uniform";
}

std::string render_config(const SimulationConfig& c, std::span<const std::string> header_comments) {
  std::string out;
  for (const auto& line : header_comments) out += "# " + line + "\n";
  auto kv = [&out](std::string_view key, const std::string& value) {
    out += std::string(key) + " = " + value + "\n";
  };
  kv("regime", to_string(c.regime));
  kv("eps", format_double(c.eps));
  kv("dt", format_double(c.dt));
  kv("t_final", format_double(c.t_final));
  kv("scheme", to_string(c.scheme));
  kv("grid.nx", std::to_string(c.grid.nx));
  kv("grid.ny", std::to_string(c.grid.ny));
  kv("grid.x_lo", format_double(c.grid.x_lo));
  kv("grid.x_hi", format_double(c.grid.x_hi));
  kv("grid.y_lo", format_double(c.grid.y_lo));
  kv("grid.y_hi", format_double(c.grid.y_hi));
  kv("init.distribution", to_string(c.init.distribution));
  kv("init.particles", std::to_string(c.init.particles));
  kv("init.seed", std::to_string(c.init.seed));
  kv("init.eta", format_double(c.init.eta));
  kv("init.k", format_double(c.init.k));
  kv("init.alpha", format_double(c.init.alpha));
  kv("init.l", std::to_string(c.init.l));
  kv("init.rminus", format_double(c.init.r_minus));
  kv("init.rplus", format_double(c.init.r_plus));
  kv("init.vmax", format_double(c.init.v_max));
  kv("magnetic.model", to_string(c.magnetic.model));
  kv("magnetic.b0", format_double(c.magnetic.b0));
  kv("output.dir", c.output.dir);
  if (!c.output.snapshots.empty()) {
    std::string list;
    for (std::size_t i = 0; i < c.output.snapshots.size(); ++i) {
      if (i > 0) list += ",";
      list += format_double(c.output.snapshots[i]);
    }
    kv("output.snapshots", list);
  }
  kv("output.energy", c.output.energy ? "true" : "false");
  kv("output.rho", c.output.rho ? "true" : "false");
  kv("output.rho_v", c.output.rho_v ? "true" : "false");
  kv("output.chi", c.output.chi ? "true" : "false");
  return out;
}

}  // namespace erpic
