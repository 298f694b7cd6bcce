#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erpic/grid.hpp"
#include "erpic/magnetic.hpp"
#include "erpic/regime.hpp"
#include "erpic/sampling.hpp"

namespace erpic {

enum class Scheme { RS1, RS2, RK4Ref };

enum class DistributionKind { TwoBump, Diocotron };
enum class MagneticKind { Example1, Uniform, CustomConstant };

struct GridConfig {
  int nx = 0, ny = 0;
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct InitConfig {
  DistributionKind distribution = DistributionKind::TwoBump;
  std::size_t particles = 0;
  std::uint64_t seed = 0;
  double eta = 0.05;
  double k = 0.5;
  double alpha = 0.2;
  int l = 5;
  double r_minus = 5.0;
  double r_plus = 8.0;
  double v_max = 6.0;
  friend bool operator==(const InitConfig&, const InitConfig&) = default;
};

struct MagneticConfig {
  MagneticKind model = MagneticKind::Uniform;
  double b0 = 1.0;  // custom-constant only; example1/uniform fix b0 = 1
  friend bool operator==(const MagneticConfig&, const MagneticConfig&) = default;
};

struct OutputConfig {
  std::string dir = "erpic_out";
  std::vector<double> snapshots;  // stepping-time values; t=0 always written
  bool energy = true;
  bool rho = true;
  bool rho_v = false;
  bool chi = false;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// One full simulation description. `dt` and `t_final` are in t for the
/// fluid regime; rescaled regimes step in tau = t/eps up to t_final/eps.
struct SimulationConfig {
  Regime regime = Regime::Fluid;
  double eps = 1.0;
  double dt = 0.1;
  double t_final = 1.0;
  Scheme scheme = Scheme::RS2;
  GridConfig grid;
  InitConfig init;
  MagneticConfig magnetic;
  OutputConfig output;

  Grid2D make_grid() const;
  InitialDistribution make_distribution() const;
  MagneticModel make_magnetic() const;
  RegimeCoefficients make_coeffs() const;
  /// t_final (fluid) or t_final/eps (rescaled), in stepping-time units.
  double horizon() const;
  long step_count() const;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct ConfigIssue {
  int line = 0;  // 0 when no single line is responsible (e.g. missing key)
  std::string message;
};

struct ParseResult {
  std::optional<SimulationConfig> config;
  std::vector<ConfigIssue> issues;
  bool ok() const { return config.has_value(); }
};

/// Parses the line-oriented `key = value` format with dotted section keys
/// and '#' comments. Collects every violation (unknown key, missing key,
/// type mismatch, invariant violation) instead of stopping at the first.
ParseResult parse_config(std::string_view text);

/// Same, with `key=value` override strings applied before validation.
ParseResult parse_config(std::string_view text, std::span<const std::string> overrides);

/// Throws ConfigError listing all issues.
SimulationConfig parse_config_or_throw(std::string_view text);

/// Emits config text such that parse(render(c)) == c. Optional comment
/// lines (without '#') are placed at the top.
std::string render_config(const SimulationConfig& config,
                          std::span<const std::string> header_comments = {});

std::string to_string(Regime r);
std::string to_string(Scheme s);
std::string to_string(DistributionKind d);
std::string to_string(MagneticKind m);

}  // namespace erpic
