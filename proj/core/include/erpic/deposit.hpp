#pragma once

#include <span>

#include "erpic/grid.hpp"
#include "erpic/math.hpp"
#include "erpic/particles.hpp"
#include "erpic/poisson.hpp"

namespace erpic {

/// Scatters per-particle weights onto grid nodes with the tensor-product
/// quintic kernel, normalized so that dx*dy*sum(out) == sum(weights) up to
/// rounding. Particles are processed in index order (deterministic); with
/// ERPIC_THREADS > 1 the reduction over per-chunk buffers keeps a fixed
/// order for a given thread count.
ScalarField deposit_weighted(const Grid2D& grid, std::span<const double> xs,
                             std::span<const double> ys, std::span<const double> weights);

/// Charge density of the ensemble (weights w_k). Rejects velocity_dim != 2.
ScalarField deposit_density(const ParticleEnsemble& ensemble, const Grid2D& grid);

/// Field value at one position by the same 6x6 quintic stencil used for
/// deposition (symmetric scheme). Position is wrapped internally.
Vec2 interpolate_field(const VectorField2D& field, Vec2 position);

/// Batched gather: out_* arrays must have the same length as xs/ys.
void interpolate_batch(const VectorField2D& field, std::span<const double> xs,
                       std::span<const double> ys, std::span<double> out_ex,
                       std::span<double> out_ey);

/// deposit_weighted + solve + interpolate_batch at one set of positions,
/// with a single stencil build per particle shared by the scatter and the
/// gather. Bit-identical to the separate calls.
void field_at_particles(const PoissonSolver2D& solver, std::span<const double> xs,
                        std::span<const double> ys, std::span<const double> ws,
                        std::span<double> out_ex, std::span<double> out_ey);

}  // namespace erpic
