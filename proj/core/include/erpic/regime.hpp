#pragma once

namespace erpic {

enum class Regime { Fluid, LarmorRescaled, DiffusionRescaled };

/// The triple (kappa_B, kappa_E, lambda) specializing the characteristic
/// equation  dv/dt = kappa_B * b(x) * (v2,-v1) + kappa_E * E(x)  and the
/// conserved functional  H = 1/2 sum w|v|^2 + (lambda/2) int |E|^2, with
/// lambda == kappa_E. Rescaled regimes step in tau = t/eps, so their
/// horizon carries the factor 1/eps.
struct RegimeCoefficients {
  double kappa_B = 1.0;
  double kappa_E = 1.0;
  double lambda = 1.0;
  Regime regime = Regime::Fluid;
  double time_horizon_factor = 1.0;  // 1 for Fluid (time t), 1/eps in tau otherwise
};

/// Fluid:     (1/eps, 1,   1),   horizon T
/// Larmor:    (1,     eps, eps), horizon T/eps
/// Diffusion: (1/eps, 1,   1),   horizon T/eps
/// Requires 0 < eps <= 1.
RegimeCoefficients regime_coefficients(Regime regime, double eps);

/// Physical eps recovered from the triple (needed by B(x) = B0 + eps*B1(x)).
inline double regime_eps(const RegimeCoefficients& c) {
  return c.regime == Regime::LarmorRescaled ? c.kappa_E : 1.0 / c.kappa_B;
}

}  // namespace erpic
