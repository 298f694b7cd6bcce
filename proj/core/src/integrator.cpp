#include "erpic/integrator.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "erpic/deposit.hpp"
#include "erpic/diagnostics.hpp"
#include "erpic/errors.hpp"
#include "erpic/math.hpp"

namespace erpic {

struct StepContext::Impl {
  Grid2D grid;
  RegimeCoefficients coeffs;
  MagneticModel model;
  double eps;
  PoissonSolver2D solver;

  Impl(const Grid2D& g, const RegimeCoefficients& c, MagneticModel m)
      : grid(g), coeffs(c), model(std::move(m)), eps(regime_eps(c)), solver(g) {}
};

StepContext::StepContext(const Grid2D& grid, const RegimeCoefficients& coeffs,
                         MagneticModel model)
    : impl_(std::make_unique<Impl>(grid, coeffs, std::move(model))) {}
StepContext::~StepContext() = default;

const Grid2D& StepContext::grid() const { return impl_->grid; }
const RegimeCoefficients& StepContext::coeffs() const { return impl_->coeffs; }
const MagneticModel& StepContext::model() const { return impl_->model; }
const PoissonSolver2D& StepContext::solver() const { return impl_->solver; }
double StepContext::eps() const { return impl_->eps; }
StepContext::Impl& StepContext::impl() const { return *impl_; }

SimState make_state(ParticleEnsemble ensemble, const StepContext& ctx) {
  ensemble.canonicalize(ctx.grid());
  ensemble.validate();
  SimState state;
  state.ensemble = std::move(ensemble);
  state.field = ctx.solver().solve(deposit_density(state.ensemble, ctx.grid()));
  state.energy = kinetic_energy(state.ensemble) + field_energy(state.field, ctx.coeffs().lambda);
  return state;
}

void psi1_step(SimState& state, double h, const StepContext& ctx) {
  const double theta_scale = ctx.coeffs().kappa_B * h;
  const double eps = ctx.eps();
  auto& ens = state.ensemble;
  const std::size_t n = ens.size();
  if (ctx.model().kind() == MagneticModel::Kind::Scalar2D) {
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 v = ctx.model().rotate_velocity({ens.x[k], ens.y[k]}, {ens.vx[k], ens.vy[k]},
                                                 theta_scale, eps);
      ens.vx[k] = v.x;
      ens.vy[k] = v.y;
    }
  } else {
    if (ens.velocity_dim() != 3) {
      throw NumericalError("psi1_step: 3D magnetic model requires 3-component velocities");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Vec3 v = ctx.model().rotate_velocity3(
          {ens.x[k], ens.y[k]}, {ens.vx[k], ens.vy[k], ens.vz[k]}, theta_scale, eps);
      ens.vx[k] = v.x;
      ens.vy[k] = v.y;
      ens.vz[k] = v.z;
    }
  }
  // Positions, field, cached energy untouched: the rotation is orthogonal
  // and the field term depends on positions only.
}

Psi2Prediction psi2_predict(const SimState& state, double h, const StepContext& ctx) {
  if (!(h > 0.0)) throw NumericalError("psi2_predict: h must be positive");
  const auto& ens = state.ensemble;
  if (ens.velocity_dim() != 2) {
    throw NumericalError("psi2_predict: electric subflow requires 2-component velocities");
  }
  const Grid2D& grid = ctx.grid();
  const double kappa_e = ctx.coeffs().kappa_E;
  const std::size_t n = ens.size();

  Psi2Prediction p;
  p.x1_x.resize(n);
  p.x1_y.resize(n);
  const double h2 = 0.5 * h;
  for (std::size_t k = 0; k < n; ++k) {
    p.x1_x[k] = wrap_periodic(ens.x[k] + h2 * ens.vx[k], grid.x_lo, grid.lx());
    p.x1_y[k] = wrap_periodic(ens.y[k] + h2 * ens.vy[k], grid.y_lo, grid.ly());
  }
  p.e_x1_x.resize(n);
  p.e_x1_y.resize(n);
  field_at_particles(ctx.solver(), p.x1_x, p.x1_y, ens.w, p.e_x1_x, p.e_x1_y);

  p.new_x.resize(n);
  p.new_y.resize(n);
  p.vt_x.resize(n);
  p.vt_y.resize(n);
  const double hk = h * kappa_e;
  const double h2k = 0.5 * h * h * kappa_e;
  for (std::size_t k = 0; k < n; ++k) {
    p.new_x[k] = wrap_periodic(ens.x[k] + h * ens.vx[k] + h2k * p.e_x1_x[k], grid.x_lo, grid.lx());
    p.new_y[k] = wrap_periodic(ens.y[k] + h * ens.vy[k] + h2k * p.e_x1_y[k], grid.y_lo, grid.ly());
    p.vt_x[k] = ens.vx[k] + hk * p.e_x1_x[k];
    p.vt_y[k] = ens.vy[k] + hk * p.e_x1_y[k];
  }
  p.field_new = ctx.solver().solve(deposit_weighted(grid, p.new_x, p.new_y, ens.w));
  return p;
}

double degenerate_a_tol(double total_weight, double max_e_sq) {
  return 1e-28 * total_weight * std::max(1.0, max_e_sq);
}

GammaResult relaxation_gamma(double A, double C, double H_tilde, double h, double kappa_E,
                             double a_tol) {
  GammaResult r;
  r.discriminant = C * C - 2.0 * A * H_tilde;
  if (!(A > a_tol)) {
    r.branch = GammaBranch::DegenerateA;
    return r;
  }
  if (r.discriminant < 0.0) {
    r.branch = GammaBranch::NegativeDiscriminant;
    return r;
  }
  const double sgn_c = C >= 0.0 ? 1.0 : -1.0;  // sgn(0) = +1
  r.branch = GammaBranch::RealRoot;
  r.gamma = (-C + sgn_c * std::sqrt(r.discriminant)) / (h * kappa_E * A);
  return r;
}

namespace {

double weighted_pairwise(const std::vector<double>& w, const std::vector<double>& a,
                         const std::vector<double>& b, const std::vector<double>& c,
                         const std::vector<double>& d) {
  // sum_k w_k (a_k c_k + b_k d_k), pairwise for reproducible rounding
  std::vector<double> terms(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) terms[k] = w[k] * (a[k] * c[k] + b[k] * d[k]);
  return pairwise_sum(terms);
}

#ifndef NDEBUG
void debug_check_caches(const SimState& state, const StepContext& ctx) {
  const VectorField2D e = ctx.solver().solve(deposit_density(state.ensemble, ctx.grid()));
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < e.e1.size(); ++i) {
    diff = std::max({diff, std::abs(e.e1[i] - state.field.e1[i]),
                     std::abs(e.e2[i] - state.field.e2[i])});
    scale = std::max({scale, std::abs(e.e1[i]), std::abs(e.e2[i])});
  }
  assert(diff <= 1e-12 * std::max(1.0, scale) && "SimState: stale cached field");
  const double h = kinetic_energy(state.ensemble) + field_energy(e, ctx.coeffs().lambda);
  assert(std::abs(h - state.energy) <= 1e-10 * std::max(1.0, std::abs(h)) &&
         "SimState: stale cached energy");
}
#endif

}  // namespace

StepRecord psi2_step(SimState& state, double h, StepContext& ctx) {
#ifndef NDEBUG
  debug_check_caches(state, ctx);
#endif
  Psi2Prediction p = psi2_predict(state, h, ctx);
  auto& ens = state.ensemble;
  const double lambda = ctx.coeffs().lambda;
  const double kappa_e = ctx.coeffs().kappa_E;
  const std::size_t n = ens.size();

  std::vector<double> kin_terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    kin_terms[k] = ens.w[k] * (p.vt_x[k] * p.vt_x[k] + p.vt_y[k] * p.vt_y[k]);
  }
  const double h_unrelaxed = 0.5 * pairwise_sum(kin_terms) + field_energy(p.field_new, lambda);
  const double h_tilde = h_unrelaxed - state.energy;

  const double a_sum = weighted_pairwise(ens.w, p.e_x1_x, p.e_x1_y, p.e_x1_x, p.e_x1_y);
  const double c_sum = weighted_pairwise(ens.w, p.e_x1_x, p.e_x1_y, p.vt_x, p.vt_y);
  double max_e_sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    max_e_sq = std::max(max_e_sq, p.e_x1_x[k] * p.e_x1_x[k] + p.e_x1_y[k] * p.e_x1_y[k]);
  }
  const GammaResult g = relaxation_gamma(a_sum, c_sum, h_tilde, h, kappa_e,
                                         degenerate_a_tol(ens.total_weight(), max_e_sq));

  const double kick = h * g.gamma * kappa_e;
  ens.x = std::move(p.new_x);
  ens.y = std::move(p.new_y);
  for (std::size_t k = 0; k < n; ++k) {
    ens.vx[k] = p.vt_x[k] + kick * p.e_x1_x[k];
    ens.vy[k] = p.vt_y[k] + kick * p.e_x1_y[k];
  }
  state.field = std::move(p.field_new);
  state.energy = kinetic_energy(ens) + field_energy(state.field, lambda);
  state.time += h;
  state.step_index += 1;

  return StepRecord{state.step_index, state.time, state.energy,
                    g.gamma,          g.branch,   g.discriminant};
}

StepRecord step_rs1(SimState& state, double h, StepContext& ctx) {
  if (h == 0.0) {
    return StepRecord{state.step_index, state.time, state.energy, 0.0, GammaBranch::DegenerateA,
                      0.0};
  }
  psi1_step(state, h, ctx);
  return psi2_step(state, h, ctx);
}

StepRecord step_rs2(SimState& state, double h, StepContext& ctx) {
  if (h == 0.0) {
    return StepRecord{state.step_index, state.time, state.energy, 0.0, GammaBranch::DegenerateA,
                      0.0};
  }
  psi1_step(state, 0.5 * h, ctx);
  StepRecord rec = psi2_step(state, h, ctx);
  psi1_step(state, 0.5 * h, ctx);
  state.energy = kinetic_energy(state.ensemble) + field_energy(state.field, ctx.coeffs().lambda);
  rec.energy = state.energy;
  return rec;
}

void rk4_integrate(Rk4Rhs& rhs, std::vector<double>& x, std::vector<double>& y,
                   std::vector<double>& vx, std::vector<double>& vy, double h, long n_steps) {
  const std::size_t n = x.size();
  std::vector<double> ax(n), ay(n);           // stage accelerations
  std::vector<double> sx(n), sy(n), svx(n), svy(n);
  std::vector<double> sx2(n), sy2(n), svx2(n), svy2(n);
  std::vector<double> xd(n), yd(n), axs(n), ays(n);  // weighted derivative sums
  const double h2 = 0.5 * h;

  for (long step = 0; step < n_steps; ++step) {
    rhs.accel(x, y, vx, vy, ax, ay);
    for (std::size_t k = 0; k < n; ++k) {
      xd[k] = vx[k];
      yd[k] = vy[k];
      axs[k] = ax[k];
      ays[k] = ay[k];
      sx[k] = x[k] + h2 * vx[k];
      sy[k] = y[k] + h2 * vy[k];
      svx[k] = vx[k] + h2 * ax[k];
      svy[k] = vy[k] + h2 * ay[k];
    }
    rhs.accel(sx, sy, svx, svy, ax, ay);
    for (std::size_t k = 0; k < n; ++k) {
      xd[k] += 2.0 * svx[k];
      yd[k] += 2.0 * svy[k];
      axs[k] += 2.0 * ax[k];
      ays[k] += 2.0 * ay[k];
      sx2[k] = x[k] + h2 * svx[k];
      sy2[k] = y[k] + h2 * svy[k];
      svx2[k] = vx[k] + h2 * ax[k];
      svy2[k] = vy[k] + h2 * ay[k];
    }
    rhs.accel(sx2, sy2, svx2, svy2, ax, ay);
    for (std::size_t k = 0; k < n; ++k) {
      xd[k] += 2.0 * svx2[k];
      yd[k] += 2.0 * svy2[k];
      axs[k] += 2.0 * ax[k];
      ays[k] += 2.0 * ay[k];
      sx[k] = x[k] + h * svx2[k];
      sy[k] = y[k] + h * svy2[k];
      svx[k] = vx[k] + h * ax[k];
      svy[k] = vy[k] + h * ay[k];
    }
    rhs.accel(sx, sy, svx, svy, ax, ay);
    const double h6 = h / 6.0;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += h6 * (xd[k] + svx[k]);
      y[k] += h6 * (yd[k] + svy[k]);
      vx[k] += h6 * (axs[k] + ax[k]);
      vy[k] += h6 * (ays[k] + ay[k]);
    }
  }
}

namespace {

class SelfConsistentRhs final : public Rk4Rhs {
public:
  SelfConsistentRhs(const StepContext& ctx, const std::vector<double>& weights)
      : ctx_(ctx), weights_(weights), ex_(weights.size()), ey_(weights.size()) {}

  void accel(std::span<const double> x, std::span<const double> y, std::span<const double> vx,
             std::span<const double> vy, std::span<double> ax, std::span<double> ay) override {
    field_at_particles(ctx_.solver(), x, y, weights_, ex_, ey_);
    const double kb = ctx_.coeffs().kappa_B;
    const double ke = ctx_.coeffs().kappa_E;
    const double eps = ctx_.eps();
    const MagneticModel& model = ctx_.model();
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double b = kb * model.eval_scalar({x[k], y[k]}, eps);
      ax[k] = b * vy[k] + ke * ex_[k];
      ay[k] = -b * vx[k] + ke * ey_[k];
    }
  }

private:
  const StepContext& ctx_;
  const std::vector<double>& weights_;
  std::vector<double> ex_, ey_;
};

}  // namespace

SimState rk4_reference(SimState state, double h_ref, long n_steps, StepContext& ctx) {
  if (state.ensemble.velocity_dim() != 2) {
    throw NumericalError("rk4_reference: requires 2-component velocities");
  }
  if (ctx.model().kind() != MagneticModel::Kind::Scalar2D) {
    throw NumericalError("rk4_reference: requires a 2D scalar magnetic model");
  }
  auto& ens = state.ensemble;
  SelfConsistentRhs rhs(ctx, ens.w);
  const Grid2D& grid = ctx.grid();
  // Positions evolve unwrapped so the RHS stays smooth across the periodic
  // seam; deposit/interpolation wrap internally. Canonicalized at the end.
  rk4_integrate(rhs, ens.x, ens.y, ens.vx, ens.vy, h_ref, n_steps);
  state.time += h_ref * static_cast<double>(n_steps);
  state.step_index += n_steps;
  ens.canonicalize(grid);
  state.field = ctx.solver().solve(deposit_density(ens, grid));
  state.energy = kinetic_energy(ens) + field_energy(state.field, ctx.coeffs().lambda);
  return state;
}

}  // namespace erpic
