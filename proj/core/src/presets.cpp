#include "erpic/presets.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "erpic/errors.hpp"

namespace erpic {

namespace {

constexpr std::uint64_t kPresetSeed = 12345;

void apply_desk_scale(SimulationConfig& cfg) {
  cfg.grid.nx /= 2;
  cfg.grid.ny /= 2;
  cfg.init.particles /= 10;
}

SimulationConfig example1_base() {
  SimulationConfig cfg;
  cfg.regime = Regime::Fluid;
  cfg.eps = 0.01;
  cfg.dt = 0.1;
  cfg.t_final = 20.0;
  cfg.scheme = Scheme::RS2;
  cfg.grid = {64, 32, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI};
  cfg.init.distribution = DistributionKind::TwoBump;
  cfg.init.particles = 102400;
  cfg.init.seed = kPresetSeed;
  cfg.init.eta = 0.05;
  cfg.init.k = 0.5;
  cfg.init.v_max = 6.0;
  cfg.magnetic.model = MagneticKind::Example1;
  cfg.output.snapshots = {0.0, 10.0, 20.0};
  return cfg;
}

}  // namespace

SimulationConfig preset(std::string_view name, PresetScale scale) {
  SimulationConfig cfg;
  if (name == "example1") {
    cfg = example1_base();
    cfg.output.dir = "out/example1";
  } else if (name == "example2-diocotron") {
    cfg.regime = Regime::Fluid;
    cfg.eps = 0.01;
    cfg.dt = 0.01;
    cfg.t_final = 100.0;
    cfg.scheme = Scheme::RS2;
    cfg.grid = {128, 128, -12.0, 12.0, -12.0, 12.0};
    cfg.init.distribution = DistributionKind::Diocotron;
    cfg.init.particles = 819200;  // 50 per cell on the 128x128 grid
    cfg.init.seed = kPresetSeed;
    cfg.init.alpha = 0.2;
    cfg.init.l = 5;
    cfg.init.r_minus = 5.0;
    cfg.init.r_plus = 8.0;
    cfg.init.v_max = 6.0;
    cfg.magnetic.model = MagneticKind::Uniform;
    cfg.output.snapshots = {0.0, 50.0, 100.0};
    cfg.output.dir = "out/example2-diocotron";
  } else if (name == "example3-larmor") {
    cfg = example1_base();
    cfg.regime = Regime::LarmorRescaled;
    cfg.eps = 0.1;
    cfg.dt = 0.1;   // tau step
    cfg.t_final = 1.0;  // physical horizon; runs to tau = 10
    cfg.output.snapshots = {0.0, 5.0, 10.0};
    cfg.output.dir = "out/example3-larmor";
  } else if (name == "diffusion-rect") {
    cfg = example1_base();
    cfg.regime = Regime::DiffusionRescaled;
    cfg.eps = 0.25;
    cfg.dt = 0.05;
    cfg.t_final = 1.0;  // runs to tau = 4
    cfg.output.snapshots = {0.0, 2.0, 4.0};
    cfg.output.dir = "out/diffusion-rect";
  } else {
    throw ConfigError("unknown preset '" + std::string(name) +
                      "' (known: example1, example2-diocotron, example3-larmor, diffusion-rect)");
  }
  if (scale == PresetScale::Desk) {
    apply_desk_scale(cfg);
    cfg.output.dir += "-desk";
  }
  return cfg;
}

std::string render_preset(std::string_view name, PresetScale scale) {
  const SimulationConfig cfg = preset(name, scale);
  std::vector<std::string> header;
  header.push_back("preset " + std::string(name) +
                   (scale == PresetScale::Desk ? " (desk scale)" : " (paper scale)"));
  if (scale == PresetScale::Desk) {
    header.push_back("desk scale rule: grid halved per axis, particle count divided by 10;");
    header.push_back("physics parameters unchanged");
  }
  return render_config(cfg, header);
}

}  // namespace erpic
