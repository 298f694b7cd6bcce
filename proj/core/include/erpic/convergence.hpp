#pragma once

#include <vector>

#include "erpic/config.hpp"
#include "erpic/diagnostics.hpp"
#include "erpic/io.hpp"

namespace erpic {

struct ConvergenceSpec {
  SimulationConfig base;
  std::vector<double> eps_list;
  std::vector<double> dt_list;
  double dt_ref = 0.0;  // must be <= min(dt_list)/50
};

/// RK4 reference run with its Richardson guard: the same trajectory
/// recomputed at 2*dt_ref; guard_err is the moment error between the two.
struct ReferenceRun {
  MomentSet moments;
  double guard_err = 0.0;
};

/// Moments of one scheme run from a fixed ensemble (no file output).
MomentSet scheme_moments(const SimulationConfig& cfg, const ParticleEnsemble& ensemble,
                         Scheme scheme, double dt);

ReferenceRun reference_moments(const SimulationConfig& cfg, const ParticleEnsemble& ensemble,
                               double dt_ref);

/// For each (eps, dt): runs the configured scheme and the RK4 reference from
/// the same sampled ensemble, tabulates err_rho+err_rhov at the horizon and
/// the observed orders between consecutive dt. Aborts (NumericalError) when
/// a reference fails its Richardson guard: guard_err must stay below 5% of
/// the smallest scheme error at that eps. Writes errors.csv under
/// base.output.dir and returns the rows.
std::vector<ConvergenceRow> run_convergence(const ConvergenceSpec& spec);

}  // namespace erpic
