#include "erpic/particles.hpp"

#include <cmath>

#include "erpic/errors.hpp"
#include "erpic/math.hpp"

namespace erpic {

double ParticleEnsemble::total_weight() const { return pairwise_sum(w); }

void ParticleEnsemble::canonicalize(const Grid2D& grid) {
  const double lx = grid.lx(), ly = grid.ly();
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = wrap_periodic(x[k], grid.x_lo, lx);
    y[k] = wrap_periodic(y[k], grid.y_lo, ly);
  }
}

void ParticleEnsemble::validate() const {
  const std::size_t n = x.size();
  if (y.size() != n || vx.size() != n || vy.size() != n || w.size() != n ||
      (!vz.empty() && vz.size() != n)) {
    throw NumericalError("ParticleEnsemble: inconsistent array sizes");
  }
  if (n == 0) return;
  const double w0 = w[0];
  if (!(w0 > 0.0)) throw NumericalError("ParticleEnsemble: weights must be positive");
  for (std::size_t k = 0; k < n; ++k) {
    if (w[k] != w0) throw NumericalError("ParticleEnsemble: weights must be uniform");
    if (!std::isfinite(x[k]) || !std::isfinite(y[k]) || !std::isfinite(vx[k]) ||
        !std::isfinite(vy[k]) || (!vz.empty() && !std::isfinite(vz[k]))) {
      throw NumericalError("ParticleEnsemble: non-finite particle state");
    }
  }
}

}  // namespace erpic
