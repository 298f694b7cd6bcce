#pragma once

#include <filesystem>
#include <vector>

#include "erpic/config.hpp"
#include "erpic/integrator.hpp"

namespace erpic {

struct RunResult {
  SimState final_state;
  std::vector<StepRecord> records;
  double initial_energy = 0.0;
  std::filesystem::path out_dir;
};

/// Full simulation loop: sample the ensemble, solve the initial field, step
/// with the configured scheme to the horizon, write manifest, energy.csv,
/// and requested snapshots under output.dir. Identical configs produce
/// byte-identical outputs in single-thread mode. A numerical failure mid-run
/// dumps the ensemble next to the outputs and rethrows with the step index.
RunResult run_simulation(const SimulationConfig& config);

/// Same loop without touching the filesystem (tests, sweeps).
RunResult run_simulation_in_memory(const SimulationConfig& config);

/// The loop on a prepared state; appends one record per step.
void run_steps(SimState& state, StepContext& ctx, Scheme scheme, double dt, long n_steps,
               std::vector<StepRecord>& records);

}  // namespace erpic
