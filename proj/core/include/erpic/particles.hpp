#pragma once

#include <cstddef>
#include <vector>

#include "erpic/grid.hpp"

namespace erpic {

/// Macroparticle ensemble with uniform positive weights: the discrete
/// distribution carried by the PIC method. Positions are kept in the
/// canonical periodic representative [x_lo,x_hi) x [y_lo,y_hi).
/// Velocities are 2-component for PIC runs; a third component may be
/// present for single-particle rotation tests.
struct ParticleEnsemble {
  std::vector<double> x;   // size n_p
  std::vector<double> y;   // size n_p
  std::vector<double> vx;  // size n_p
  std::vector<double> vy;  // size n_p
  std::vector<double> vz;  // empty for d=2, size n_p for d=3
  std::vector<double> w;   // size n_p, all entries equal

  std::size_t size() const { return x.size(); }
  int velocity_dim() const { return vz.empty() ? 2 : 3; }
  double total_weight() const;

  /// Wraps every position into the canonical box of `grid`.
  void canonicalize(const Grid2D& grid);

  /// Throws NumericalError unless sizes are consistent, weights are uniform
  /// and positive, and every entry is finite.
  void validate() const;
};

}  // namespace erpic
