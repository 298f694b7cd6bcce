#include "erpic/grid.hpp"

#include <cmath>

#include "erpic/errors.hpp"

namespace erpic {

Grid2D Grid2D::make(int nx, int ny, double x_lo, double x_hi, double y_lo, double y_hi) {
  if (nx < 8 || ny < 8) {
    throw ConfigError("Grid2D: nx and ny must be >= 8 (quintic stencil spans 6 cells)");
  }
  if (!(x_hi > x_lo) || !(y_hi > y_lo)) {
    throw ConfigError("Grid2D: domain bounds must satisfy x_lo < x_hi and y_lo < y_hi");
  }
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !std::isfinite(y_lo) ||
      !std::isfinite(y_hi)) {
    throw ConfigError("Grid2D: non-finite domain bounds");
  }
  return Grid2D{nx, ny, x_lo, x_hi, y_lo, y_hi};
}

bool ScalarField::all_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace erpic
