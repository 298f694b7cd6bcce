#pragma once

#include <vector>

namespace erpic {

/// Uniform periodic rectangular mesh. Fields are sampled at the nodes
/// x_i = x_lo + i*dx, y_j = y_lo + j*dy (no staggering); both axes wrap.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  /// Validates nx, ny >= 8 (the quintic stencil spans 6 cells) and positive
  /// extents; throws ConfigError otherwise.
  static Grid2D make(int nx, int ny, double x_lo, double x_hi, double y_lo, double y_hi);

  double lx() const { return x_hi - x_lo; }
  double ly() const { return y_hi - y_lo; }
  double dx() const { return lx() / nx; }
  double dy() const { return ly() / ny; }
  double cell_area() const { return dx() * dy(); }
  int size() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }  // row-major, i fastest

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

/// Node samples of a scalar quantity on a Grid2D, values[j*nx + i].
struct ScalarField {
  Grid2D grid;
  std::vector<double> values;

  explicit ScalarField(const Grid2D& g) : grid(g), values(static_cast<std::size_t>(g.size()), 0.0) {}
  ScalarField() = default;

  double& at(int i, int j) { return values[static_cast<std::size_t>(grid.index(i, j))]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(grid.index(i, j))]; }
  bool all_finite() const;
  double max_abs() const;
};

/// Two-component field (E1, E2) on shared node positions.
struct VectorField2D {
  Grid2D grid;
  std::vector<double> e1;
  std::vector<double> e2;

  explicit VectorField2D(const Grid2D& g)
      : grid(g),
        e1(static_cast<std::size_t>(g.size()), 0.0),
        e2(static_cast<std::size_t>(g.size()), 0.0) {}
  VectorField2D() = default;
};

}  // namespace erpic
