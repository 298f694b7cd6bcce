#pragma once

#include <span>
#include <vector>

#include "erpic/integrator.hpp"

namespace erpic {

/// Charge density rho and kinetic-energy density rho_v (|v|^2-weighted
/// deposition) at one time.
struct MomentSet {
  ScalarField rho;
  ScalarField rho_v;
  double time = 0.0;
};

/// Velocity-space histogram chi over a truncation box, deposited with the
/// same quintic kernel as the spatial fields. Particles outside the box are
/// skipped and counted.
struct VelocityMarginal {
  Grid2D v_grid;
  std::vector<double> values;
  long escapees = 0;
};

/// 1/2 sum w|v|^2 (pairwise summation).
double kinetic_energy(const ParticleEnsemble& ensemble);

/// Kinetic term plus the lambda-weighted field quadrature of the cached E.
double total_energy(const SimState& state, const RegimeCoefficients& coeffs);

MomentSet compute_moments(const SimState& state);

VelocityMarginal velocity_marginal(const SimState& state, const Grid2D& v_grid);

/// max-norm relative error summed over the two moments:
/// |rho_n - rho_r|_inf/|rho_r|_inf + |rho_v_n - rho_v_r|_inf/|rho_v_r|_inf.
/// Rejects mismatched grids and zero reference norms.
double relative_error(const MomentSet& num, const MomentSet& ref);

/// Per-record |H_n - H_0|/|H_0| with the first record as baseline.
std::vector<double> energy_error_series(std::span<const StepRecord> records);

}  // namespace erpic
