#include "erpic/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "erpic/deposit.hpp"
#include "erpic/diagnostics.hpp"
#include "erpic/errors.hpp"
#include "erpic/io.hpp"
#include "erpic/version.hpp"

namespace erpic {

namespace {

std::string snapshot_suffix(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

void write_state_snapshots(const SimulationConfig& cfg, const SimState& state, double t,
                           const std::filesystem::path& dir) {
  const std::string suffix = snapshot_suffix(t);
  if (cfg.output.rho || cfg.output.rho_v) {
    const MomentSet m = compute_moments(state);
    if (cfg.output.rho) write_snapshot(dir / ("rho_t" + suffix + ".csv"), m.rho, t);
    if (cfg.output.rho_v) write_snapshot(dir / ("rho_v_t" + suffix + ".csv"), m.rho_v, t);
  }
  if (cfg.output.chi) {
    const Grid2D v_grid = Grid2D::make(64, 64, -cfg.init.v_max, cfg.init.v_max, -cfg.init.v_max,
                                       cfg.init.v_max);
    write_marginal(dir / ("chi_t" + suffix + ".csv"), velocity_marginal(state, v_grid), t);
  }
}

std::string manifest_text(const SimulationConfig& cfg, long n_steps) {
  std::string text;
  text += "# erpic run manifest\n";
  text += "version = ";
  text += kVersion;
  text += "\n";
  text += "seed = " + std::to_string(cfg.init.seed) + "\n";
  text += "steps = " + std::to_string(n_steps) + "\n";
  text += "time_unit = " + std::string(cfg.regime == Regime::Fluid ? "t" : "tau") + "\n";
  text += "horizon = " + format_double(cfg.horizon()) + "\n";
  text += "t_final_physical = " + format_double(cfg.t_final) + "\n";
  text += "# config echo\n";
  text += render_config(cfg);
  return text;
}

RunResult run_impl(const SimulationConfig& cfg, bool write_files) {
  const Grid2D grid = cfg.make_grid();
  const RegimeCoefficients coeffs = cfg.make_coeffs();
  StepContext ctx(grid, coeffs, cfg.make_magnetic());
  ParticleEnsemble ens = sample_ensemble(cfg.make_distribution(), cfg.init.particles,
                                         cfg.init.seed);

  const long n_steps = cfg.step_count();
  const double dt = cfg.dt;

  RunResult rr;
  rr.out_dir = cfg.output.dir;
  if (write_files) {
    std::filesystem::create_directories(rr.out_dir);
    std::ofstream mf(rr.out_dir / "manifest.txt", std::ios::trunc);
    mf << manifest_text(cfg, n_steps);
  }

  SimState state = make_state(std::move(ens), ctx);
  rr.initial_energy = state.energy;
  rr.records.reserve(static_cast<std::size_t>(n_steps));

  // snapshot schedule: requested times quantized to the nearest step; t=0
  // is always emitted
  std::map<long, double> snapshots;
  if (write_files) {
    snapshots[0] = 0.0;
    for (double ts : cfg.output.snapshots) {
      long s = std::lround(ts / dt);
      if (s < 0) s = 0;
      if (s > n_steps) s = n_steps;
      snapshots.emplace(s, ts);
    }
    if (auto it = snapshots.find(0); it != snapshots.end()) {
      write_state_snapshots(cfg, state, it->second, rr.out_dir);
    }
  }

  try {
    for (long step = 0; step < n_steps; ++step) {
      StepRecord rec;
      switch (cfg.scheme) {
        case Scheme::RS1:
          rec = step_rs1(state, dt, ctx);
          break;
        case Scheme::RS2:
          rec = step_rs2(state, dt, ctx);
          break;
        case Scheme::RK4Ref:
          state = rk4_reference(std::move(state), dt, 1, ctx);
          rec = StepRecord{state.step_index, state.time, state.energy, 0.0,
                           GammaBranch::DegenerateA, 0.0};
          break;
      }
      rr.records.push_back(rec);
      if (write_files) {
        if (auto it = snapshots.find(step + 1); it != snapshots.end()) {
          write_state_snapshots(cfg, state, it->second, rr.out_dir);
        }
      }
    }
  } catch (const NumericalError& err) {
    if (write_files) {
      const auto dump = rr.out_dir / "crash_state.bin";
      dump_ensemble(dump, state.ensemble);
      if (cfg.output.energy) {
        write_energy_csv(rr.out_dir / "energy.csv", rr.records, rr.initial_energy);
      }
      throw NumericalError(std::string(err.what()) + " [at step " +
                           std::to_string(state.step_index + 1) + ", state dumped to " +
                           dump.string() + "]");
    }
    throw NumericalError(std::string(err.what()) + " [at step " +
                         std::to_string(state.step_index + 1) + "]");
  }

  if (write_files && cfg.output.energy) {
    write_energy_csv(rr.out_dir / "energy.csv", rr.records, rr.initial_energy);
  }
  rr.final_state = std::move(state);
  return rr;
}

}  // namespace

void run_steps(SimState& state, StepContext& ctx, Scheme scheme, double dt, long n_steps,
               std::vector<StepRecord>& records) {
  for (long step = 0; step < n_steps; ++step) {
    switch (scheme) {
      case Scheme::RS1:
        records.push_back(step_rs1(state, dt, ctx));
        break;
      case Scheme::RS2:
        records.push_back(step_rs2(state, dt, ctx));
        break;
      case Scheme::RK4Ref:
        state = rk4_reference(std::move(state), dt, 1, ctx);
        records.push_back(StepRecord{state.step_index, state.time, state.energy, 0.0,
                                     GammaBranch::DegenerateA, 0.0});
        break;
    }
  }
}

RunResult run_simulation(const SimulationConfig& config) { return run_impl(config, true); }

RunResult run_simulation_in_memory(const SimulationConfig& config) {
  return run_impl(config, false);
}

}  // namespace erpic
