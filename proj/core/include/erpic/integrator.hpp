#pragma once

#include <memory>
#include <span>
#include <vector>

#include "erpic/magnetic.hpp"
#include "erpic/particles.hpp"
#include "erpic/poisson.hpp"
#include "erpic/regime.hpp"

namespace erpic {

/// Which root (if any) the per-step relaxation solve used. CSV encoding:
/// 0=RealRoot, 1=NegativeDiscriminant, 2=DegenerateA.
enum class GammaBranch { RealRoot = 0, NegativeDiscriminant = 1, DegenerateA = 2 };

struct StepRecord {
  long step_index = 0;
  double time = 0.0;
  double energy = 0.0;  // total H after the step
  double gamma = 0.0;
  GammaBranch branch = GammaBranch::RealRoot;
  double discriminant = 0.0;
};

/// Simulation state between steps. `field` always holds the self-consistent
/// E for the stored positions and `energy` the total H of the state; the
/// relaxation condition targets this cached H rather than re-deriving it.
struct SimState {
  ParticleEnsemble ensemble;
  double time = 0.0;
  VectorField2D field;
  double energy = 0.0;
  long step_index = 0;
};

struct GammaResult {
  double gamma = 0.0;
  GammaBranch branch = GammaBranch::RealRoot;
  double discriminant = 0.0;
};

/// Unrelaxed Stoermer-Verlet predictor of the electric subflow:
///   X1 = x + (h/2) v
///   x_new = x + h v + (h^2/2) kappa_E E_[X1](X1)
///   v_tilde = v + h kappa_E E_[X1](X1)
/// plus the field solved at the new positions (two Poisson solves).
struct Psi2Prediction {
  std::vector<double> x1_x, x1_y;
  std::vector<double> e_x1_x, e_x1_y;
  std::vector<double> new_x, new_y;
  std::vector<double> vt_x, vt_y;
  VectorField2D field_new;
};

/// Owns the Poisson solver, regime coefficients, magnetic model, and the
/// per-step scratch buffers. One context serves one grid; a stepper owns
/// one state at a time.
class StepContext {
public:
  StepContext(const Grid2D& grid, const RegimeCoefficients& coeffs, MagneticModel model);
  ~StepContext();
  StepContext(const StepContext&) = delete;
  StepContext& operator=(const StepContext&) = delete;

  const Grid2D& grid() const;
  const RegimeCoefficients& coeffs() const;
  const MagneticModel& model() const;
  const PoissonSolver2D& solver() const;
  double eps() const;

  struct Impl;
  Impl& impl() const;

private:
  std::unique_ptr<Impl> impl_;
};

/// Solves the initial field and energy for an ensemble at time 0.
SimState make_state(ParticleEnsemble ensemble, const StepContext& ctx);

/// Exact rotation subflow: every velocity is rotated by the local angle
/// kappa_B * h * b(x) with x frozen. Positions, field, cached energy
/// unchanged.
void psi1_step(SimState& state, double h, const StepContext& ctx);

Psi2Prediction psi2_predict(const SimState& state, double h, const StepContext& ctx);

/// Root selection for the energy-conservation quadratic
///   (1/2)(h kappa_E gamma)^2 A + h kappa_E gamma C + H_tilde = 0,
/// A = sum w |E(X1)|^2, C = sum w E(X1).v_tilde, H_tilde the energy change
/// of the unrelaxed step. Picks the small root
///   gamma = (-C + sgn(C) sqrt(C^2 - 2 A H_tilde)) / (h kappa_E A)
/// with sgn(0) = +1; returns gamma = 0 with the corresponding branch flag
/// when the discriminant is negative or A <= a_tol.
GammaResult relaxation_gamma(double A, double C, double H_tilde, double h, double kappa_E,
                             double a_tol);

/// a_tol = 1e-28 * total_weight * max(1, max_k |E(X1_k)|^2).
double degenerate_a_tol(double total_weight, double max_e_sq);

/// Full relaxation Stoermer-Verlet step of the electric subflow: predictor,
/// gamma from the cached energy, relaxed kick v = v_tilde + h gamma kappa_E
/// E(X1), cache refresh. On the RealRoot branch the recomputed energy
/// matches the previous one to rounding.
StepRecord psi2_step(SimState& state, double h, StepContext& ctx);

/// Lie-Trotter composition: rotation then electric subflow.
StepRecord step_rs1(SimState& state, double h, StepContext& ctx);

/// Strang composition: half rotation, electric subflow, half rotation.
StepRecord step_rs2(SimState& state, double h, StepContext& ctx);

/// Per-particle accelerations for the classical RK4 integrator.
class Rk4Rhs {
public:
  virtual ~Rk4Rhs() = default;
  virtual void accel(std::span<const double> x, std::span<const double> y,
                     std::span<const double> vx, std::span<const double> vy,
                     std::span<double> ax, std::span<double> ay) = 0;
};

/// Classical RK4 on (x, v) with a caller-supplied right-hand side.
void rk4_integrate(Rk4Rhs& rhs, std::vector<double>& x, std::vector<double>& y,
                   std::vector<double>& vx, std::vector<double>& vy, double h, long n_steps);

/// Reference integrator: RK4 on the fully coupled system
///   dx/dt = v,  dv/dt = kappa_B b(x) (v2,-v1) + kappa_E E_[x](x),
/// with the field re-deposited and re-solved at every stage so the RHS is a
/// pure function of the stage positions. Returns the state with field and
/// energy refreshed at the endpoint.
SimState rk4_reference(SimState state, double h_ref, long n_steps, StepContext& ctx);

}  // namespace erpic
