#include "erpic/regime.hpp"

#include "erpic/errors.hpp"

namespace erpic {

RegimeCoefficients regime_coefficients(Regime regime, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw ConfigError("regime_coefficients: eps must satisfy 0 < eps <= 1");
  }
  RegimeCoefficients c;
  c.regime = regime;
  switch (regime) {
    case Regime::Fluid:
      c.kappa_B = 1.0 / eps;
      c.kappa_E = 1.0;
      c.lambda = 1.0;
      c.time_horizon_factor = 1.0;
      break;
    case Regime::LarmorRescaled:
      c.kappa_B = 1.0;
      c.kappa_E = eps;
      c.lambda = eps;
      c.time_horizon_factor = 1.0 / eps;
      break;
    case Regime::DiffusionRescaled:
      c.kappa_B = 1.0 / eps;
      c.kappa_E = 1.0;
      c.lambda = 1.0;
      c.time_horizon_factor = 1.0 / eps;
      break;
  }
  return c;
}

}  // namespace erpic
