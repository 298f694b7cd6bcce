#pragma once

#include <array>
#include <cmath>

#include "erpic/errors.hpp"

namespace erpic {

namespace detail {

// Centered cardinal B-spline of degree 5, piecewise polynomial form.
//   |t| <= 1:      11/20 - t^2/2 + t^4/4 - |t|^5/12
//   1 < |t| < 2:   17/40 + 5|t|/8 - 7t^2/4 + 5|t|^3/4 - 3t^4/8 + |t|^5/24
//   2 <= |t| < 3:  (3 - |t|)^5 / 120
inline double quintic_inner(double t) {
  constexpr double c5 = -1.0 / 12.0;
  const double t2 = t * t;
  return 11.0 / 20.0 + t2 * (-0.5 + t2 * 0.25) + t2 * t2 * t * c5;
}
inline double quintic_mid(double t) {
  constexpr double c5 = 1.0 / 24.0;
  return 17.0 / 40.0 +
         t * (5.0 / 8.0 + t * (-7.0 / 4.0 + t * (5.0 / 4.0 + t * (-3.0 / 8.0 + t * c5))));
}
inline double quintic_outer(double t) {
  constexpr double c5 = 1.0 / 120.0;
  const double u = 3.0 - t;
  const double u2 = u * u;
  return u2 * u2 * u * c5;
}

/// Weights of the 6 nodes {i0-2, ..., i0+3} covering a particle at fractional
/// offset s in [0,1) past node i0. No input checking; deposit/interpolation
/// call this directly.
inline void quintic_weights(double s, double w[6]) {
  w[0] = quintic_outer(2.0 + s);
  w[1] = quintic_mid(1.0 + s);
  w[2] = quintic_inner(s);
  w[3] = quintic_inner(1.0 - s);
  w[4] = quintic_mid(2.0 - s);
  w[5] = quintic_outer(3.0 - s);
}

}  // namespace detail

/// Quintic B-spline weights at the 6 covering nodes for offset s in [0,1).
/// Non-negative, sum to 1 up to rounding. Throws on s outside [0,1).
inline std::array<double, 6> bspline_weights(double s) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw ConfigError("bspline_weights: offset must satisfy 0 <= s < 1");
  }
  std::array<double, 6> w;
  detail::quintic_weights(s, w.data());
  return w;
}

}  // namespace erpic
