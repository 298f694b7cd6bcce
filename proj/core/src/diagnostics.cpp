#include "erpic/diagnostics.hpp"

#include <cmath>
#include <vector>

#include "erpic/deposit.hpp"
#include "erpic/errors.hpp"
#include "erpic/math.hpp"

namespace erpic {

double kinetic_energy(const ParticleEnsemble& ensemble) {
  const std::size_t n = ensemble.size();
  std::vector<double> terms(n);
  if (ensemble.velocity_dim() == 2) {
    for (std::size_t k = 0; k < n; ++k) {
      terms[k] =
          ensemble.w[k] * (ensemble.vx[k] * ensemble.vx[k] + ensemble.vy[k] * ensemble.vy[k]);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      terms[k] = ensemble.w[k] * (ensemble.vx[k] * ensemble.vx[k] +
                                  ensemble.vy[k] * ensemble.vy[k] +
                                  ensemble.vz[k] * ensemble.vz[k]);
    }
  }
  return 0.5 * pairwise_sum(terms);
}

double total_energy(const SimState& state, const RegimeCoefficients& coeffs) {
  return kinetic_energy(state.ensemble) + field_energy(state.field, coeffs.lambda);
}

MomentSet compute_moments(const SimState& state) {
  const auto& ens = state.ensemble;
  MomentSet m;
  m.time = state.time;
  m.rho = deposit_density(ens, state.field.grid);
  std::vector<double> wv(ens.size());
  for (std::size_t k = 0; k < ens.size(); ++k) {
    wv[k] = ens.w[k] * (ens.vx[k] * ens.vx[k] + ens.vy[k] * ens.vy[k]);
  }
  m.rho_v = deposit_weighted(state.field.grid, ens.x, ens.y, wv);
  return m;
}

VelocityMarginal velocity_marginal(const SimState& state, const Grid2D& v_grid) {
  const auto& ens = state.ensemble;
  VelocityMarginal out;
  out.v_grid = v_grid;
  std::vector<double> vx, vy, w;
  vx.reserve(ens.size());
  vy.reserve(ens.size());
  w.reserve(ens.size());
  for (std::size_t k = 0; k < ens.size(); ++k) {
    const bool inside = ens.vx[k] >= v_grid.x_lo && ens.vx[k] < v_grid.x_hi &&
                        ens.vy[k] >= v_grid.y_lo && ens.vy[k] < v_grid.y_hi;
    if (!inside) {
      ++out.escapees;
      continue;
    }
    vx.push_back(ens.vx[k]);
    vy.push_back(ens.vy[k]);
    w.push_back(ens.w[k]);
  }
  out.values = deposit_weighted(v_grid, vx, vy, w).values;
  return out;
}

double relative_error(const MomentSet& num, const MomentSet& ref) {
  if (!(num.rho.grid == ref.rho.grid) || !(num.rho_v.grid == ref.rho_v.grid)) {
    throw NumericalError("relative_error: moment grids differ");
  }
  const double rho_ref = ref.rho.max_abs();
  const double rho_v_ref = ref.rho_v.max_abs();
  if (rho_ref == 0.0 || rho_v_ref == 0.0) {
    throw NumericalError("relative_error: zero reference max-norm");
  }
  double rho_diff = 0.0, rho_v_diff = 0.0;
  for (std::size_t i = 0; i < num.rho.values.size(); ++i) {
    rho_diff = std::max(rho_diff, std::abs(num.rho.values[i] - ref.rho.values[i]));
    rho_v_diff = std::max(rho_v_diff, std::abs(num.rho_v.values[i] - ref.rho_v.values[i]));
  }
  return rho_diff / rho_ref + rho_v_diff / rho_v_ref;
}

std::vector<double> energy_error_series(std::span<const StepRecord> records) {
  std::vector<double> out;
  if (records.empty()) return out;
  const double h0 = records.front().energy;
  if (h0 == 0.0) throw NumericalError("energy_error_series: baseline energy is zero");
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(std::abs(r.energy - h0) / std::abs(h0));
  return out;
}

}  // namespace erpic
