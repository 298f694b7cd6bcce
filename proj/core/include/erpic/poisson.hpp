#pragma once

#include <memory>

#include "erpic/grid.hpp"

namespace erpic {

/// Spectral solver for  div E = rho - mean(rho)  on the periodic box,
/// returning the curl-free zero-mean branch E = -grad(phi) with
/// lap(phi) = -(rho - mean(rho)). The k=0 mode of phi and of both E
/// components is zero; Nyquist rows of the first-derivative operators are
/// zeroed (the companion spectral_divergence uses the same convention).
/// Plans are created once per grid (FFTW, deterministic ESTIMATE planner).
class PoissonSolver2D {
public:
  explicit PoissonSolver2D(const Grid2D& grid);
  ~PoissonSolver2D();
  PoissonSolver2D(const PoissonSolver2D&) = delete;
  PoissonSolver2D& operator=(const PoissonSolver2D&) = delete;

  const Grid2D& grid() const;

  /// Rejects non-finite input. Grid must match the solver's grid.
  VectorField2D solve(const ScalarField& rho) const;

  /// Spectral divergence with the solver's wavenumber conventions; used by
  /// the residual diagnostics and tests.
  ScalarField divergence(const VectorField2D& field) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper; caches one solver per grid signature.
VectorField2D solve_poisson(const ScalarField& rho);

/// (lambda/2) * dx*dy * sum_ij (E1^2 + E2^2). This node quadrature defines
/// the conserved field-energy functional; the relaxation step must use it.
double field_energy(const VectorField2D& field, double lambda);

}  // namespace erpic
