#include "erpic/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "erpic/errors.hpp"
#include "erpic/simulation.hpp"

namespace erpic {

namespace {

long exact_step_count(double horizon, double dt) {
  const double ratio = horizon / dt;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio) {
    throw ConfigError("convergence: dt=" + format_double(dt) +
                      " must divide the horizon " + format_double(horizon));
  }
  return n;
}

}  // namespace

MomentSet scheme_moments(const SimulationConfig& cfg, const ParticleEnsemble& ensemble,
                         Scheme scheme, double dt) {
  StepContext ctx(cfg.make_grid(), cfg.make_coeffs(), cfg.make_magnetic());
  SimState state = make_state(ensemble, ctx);
  const long n = exact_step_count(cfg.horizon(), dt);
  std::vector<StepRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  run_steps(state, ctx, scheme, dt, n, records);
  return compute_moments(state);
}

ReferenceRun reference_moments(const SimulationConfig& cfg, const ParticleEnsemble& ensemble,
                               double dt_ref) {
  StepContext ctx(cfg.make_grid(), cfg.make_coeffs(), cfg.make_magnetic());
  const double horizon = cfg.horizon();
  // land exactly on the horizon, and validate by comparing against the same
  // trajectory at twice the step ("halve once" Richardson check)
  long n = std::max<long>(2, std::lround(horizon / dt_ref));
  if (n % 2 != 0) ++n;
  const double h_fine = horizon / static_cast<double>(n);

  SimState fine = rk4_reference(make_state(ensemble, ctx), h_fine, n, ctx);
  SimState coarse = rk4_reference(make_state(ensemble, ctx), 2.0 * h_fine, n / 2, ctx);

  ReferenceRun out;
  out.moments = compute_moments(fine);
  out.guard_err = relative_error(compute_moments(coarse), out.moments);
  return out;
}

std::vector<ConvergenceRow> run_convergence(const ConvergenceSpec& spec) {
  if (spec.eps_list.empty() || spec.dt_list.empty()) {
    throw ConfigError("convergence: eps list and dt list must be non-empty");
  }
  const double dt_min = *std::min_element(spec.dt_list.begin(), spec.dt_list.end());
  if (!(spec.dt_ref > 0.0) || spec.dt_ref > dt_min / 50.0) {
    throw ConfigError("convergence: reference dt must be positive and <= min(dt)/50");
  }
  if (spec.base.scheme == Scheme::RK4Ref) {
    throw ConfigError("convergence: base scheme must be RS1 or RS2");
  }

  // the initial distribution does not depend on eps: one shared ensemble
  const ParticleEnsemble ensemble = sample_ensemble(
      spec.base.make_distribution(), spec.base.init.particles, spec.base.init.seed);

  std::vector<ConvergenceRow> rows;
  for (double eps : spec.eps_list) {
    SimulationConfig cfg = spec.base;
    cfg.eps = eps;
    const ReferenceRun ref = reference_moments(cfg, ensemble, spec.dt_ref);

    std::vector<double> errs;
    errs.reserve(spec.dt_list.size());
    for (double dt : spec.dt_list) {
      const MomentSet m = scheme_moments(cfg, ensemble, cfg.scheme, dt);
      errs.push_back(relative_error(m, ref.moments));
    }
    const double min_err = *std::min_element(errs.begin(), errs.end());
    if (ref.guard_err > 0.05 * min_err) {
      throw NumericalError("convergence: reference failed its Richardson guard at eps=" +
                           format_double(eps) + " (guard error " + format_double(ref.guard_err) +
                           " vs smallest scheme error " + format_double(min_err) + ")");
    }
    for (std::size_t i = 0; i < spec.dt_list.size(); ++i) {
      ConvergenceRow row;
      row.eps = eps;
      row.dt = spec.dt_list[i];
      row.err = errs[i];
      if (i > 0 && errs[i] > 0.0 && errs[i - 1] > 0.0) {
        row.order = std::log2(errs[i - 1] / errs[i]);
      }
      rows.push_back(row);
    }
  }

  std::filesystem::create_directories(spec.base.output.dir);
  write_errors_csv(std::filesystem::path(spec.base.output.dir) / "errors.csv", rows);
  return rows;
}

}  // namespace erpic
