#pragma once

#include <cstdint>

#include "erpic/grid.hpp"
#include "erpic/particles.hpp"

namespace erpic {

/// Named initial phase-space distribution f0, with the spatial domain it
/// lives on, a symmetric velocity truncation box [-v_max, v_max]^2 for the
/// sampler, and an envelope bound M >= sup f0 used by rejection sampling.
struct InitialDistribution {
  enum class Kind { TwoBump, Diocotron };

  Kind kind = Kind::TwoBump;
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  double v_max = 6.0;

  // TwoBump: (1/4pi) (1 + sin x2 + eta cos(k x1))
  //          (exp(-((v1+2)^2+v2^2)/2) + exp(-((v1-2)^2+v2^2)/2))
  double eta = 0.05;
  double k = 0.5;

  // Diocotron: (1/2pi) d0(x) exp(-|v|^2/2) with
  //   d0 = (1 + alpha cos(l*theta)) exp(-4(|x|-ring_radius)^2)
  // on the annulus r_minus <= |x| <= r_plus, theta the full polar angle.
  double alpha = 0.2;
  int l = 5;
  double r_minus = 5.0;
  double r_plus = 8.0;
  double ring_radius = 6.5;

  static InitialDistribution two_bump(double eta, double k, double x_lo, double x_hi,
                                      double y_lo, double y_hi, double v_max = 6.0);
  static InitialDistribution diocotron(double alpha, int l, double r_minus, double r_plus,
                                       double x_lo, double x_hi, double y_lo, double y_hi,
                                       double v_max = 6.0);

  double density(double x, double y, double v1, double v2) const;

  /// Envelope bound M >= sup f0 over domain x velocity box.
  double envelope() const;

  friend bool operator==(const InitialDistribution&, const InitialDistribution&) = default;
};

/// integral of f0 over domain x R^2 (velocity mass taken un-truncated).
/// Closed form for TwoBump; fixed-order polar product quadrature for
/// Diocotron.
double distribution_integral(const InitialDistribution& dist);

/// Rejection sampling with a uniform proposal over domain x velocity box.
/// Draw order per attempt: x, y, v1, v2, acceptance (5 uniforms from
/// UniformRng(seed)), so identical (dist, n_p, seed) give bitwise-identical
/// ensembles. Every weight equals distribution_integral(dist)/n_p.
/// Throws NumericalError if f0 exceeds the envelope or the acceptance rate
/// falls below 1e-3.
ParticleEnsemble sample_ensemble(const InitialDistribution& dist, std::size_t n_p,
                                 std::uint64_t seed);

}  // namespace erpic
