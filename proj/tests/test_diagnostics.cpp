#include <doctest.h>

#include <cmath>
#include <vector>

#include "erpic/diagnostics.hpp"
#include "erpic/errors.hpp"
#include "erpic/integrator.hpp"
#include "erpic/math.hpp"
#include "erpic/rng.hpp"
#include "erpic/sampling.hpp"

using namespace erpic;

namespace {

Grid2D toy_grid() { return Grid2D::make(16, 8, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI); }

InitialDistribution toy_dist() {
  return InitialDistribution::two_bump(0.05, 0.5, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI);
}

SimState state_from(const ParticleEnsemble& ens, StepContext& ctx) {
  return make_state(ens, ctx);
}

double grid_integral(const Grid2D& g, const std::vector<double>& v) {
  return g.cell_area() * pairwise_sum(v);
}

}  // namespace

TEST_CASE("total energy of simple states") {
  const auto grid = toy_grid();
  StepContext ctx(grid, regime_coefficients(Regime::Fluid, 1.0), MagneticModel::uniform2d(1.0));

  // one particle with w=2, |v|=3 and a negligible self-field: H ~ 9
  ParticleEnsemble ens;
  ens.x = {1.0};
  ens.y = {1.0};
  ens.vx = {3.0};
  ens.vy = {0.0};
  ens.w = {2.0};
  SimState st = state_from(ens, ctx);
  const double field_part = field_energy(st.field, 1.0);
  CHECK(total_energy(st, ctx.coeffs()) == doctest::Approx(9.0 + field_part));
  CHECK(kinetic_energy(st.ensemble) == doctest::Approx(9.0).epsilon(1e-15));

  // all velocities zero on a uniform lattice: H = 0
  ParticleEnsemble lattice;
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 16; ++i) {
      lattice.x.push_back(grid.x_lo + (i + 0.5) * grid.dx());
      lattice.y.push_back(grid.y_lo + (j + 0.5) * grid.dy());
      lattice.vx.push_back(0.0);
      lattice.vy.push_back(0.0);
      lattice.w.push_back(1.0);
    }
  }
  SimState flat = state_from(lattice, ctx);
  CHECK(std::abs(total_energy(flat, ctx.coeffs())) <= 1e-20);
}

TEST_CASE("initial kinetic energy matches the analytic two-bump moment") {
  // E|v|^2 = 6 for the two-bump Maxwellian; kinetic = Q/2 * E|v|^2 / ...
  const std::size_t n = 100000;
  const auto dist = toy_dist();
  const auto ens = sample_ensemble(dist, n, 500);
  const double q = distribution_integral(dist);
  const double per_particle = 2.0 * kinetic_energy(ens) / q;  // weighted mean of |v|^2
  const double se = std::sqrt(20.0) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(per_particle - 6.0) <= 5.0 * se);
}

TEST_CASE("moments: mass identities and simple limits") {
  const auto grid = toy_grid();
  StepContext ctx(grid, regime_coefficients(Regime::Fluid, 0.5),
                  MagneticModel::sinusoidal2d(1.0));
  auto ens = sample_ensemble(toy_dist(), 2000, 71);
  SimState st = state_from(ens, ctx);
  const auto m = compute_moments(st);

  const double total_w = st.ensemble.total_weight();
  CHECK(std::abs(grid_integral(grid, m.rho.values) - total_w) <= 1e-12 * total_w);
  double wv = 0.0;
  for (std::size_t k = 0; k < st.ensemble.size(); ++k) {
    wv += st.ensemble.w[k] *
          (st.ensemble.vx[k] * st.ensemble.vx[k] + st.ensemble.vy[k] * st.ensemble.vy[k]);
  }
  CHECK(std::abs(grid_integral(grid, m.rho_v.values) - wv) <= 1e-12 * wv);

  // all velocities zero: rho_v vanishes
  for (auto& v : st.ensemble.vx) v = 0.0;
  for (auto& v : st.ensemble.vy) v = 0.0;
  const auto m0 = compute_moments(st);
  for (double v : m0.rho_v.values) CHECK(v == 0.0);

  // single particle: rho_v = |v|^2 rho
  ParticleEnsemble one;
  one.x = {2.0};
  one.y = {1.0};
  one.vx = {1.5};
  one.vy = {-0.5};
  one.w = {0.7};
  SimState s1 = state_from(one, ctx);
  const auto m1 = compute_moments(s1);
  const double vsq = 1.5 * 1.5 + 0.5 * 0.5;
  for (std::size_t i = 0; i < m1.rho.values.size(); ++i) {
    CHECK(m1.rho_v.values[i] == doctest::Approx(vsq * m1.rho.values[i]).epsilon(1e-13));
  }
}

TEST_CASE("moments add over concatenated ensembles") {
  const auto grid = toy_grid();
  StepContext ctx(grid, regime_coefficients(Regime::Fluid, 1.0), MagneticModel::uniform2d(1.0));
  auto a = sample_ensemble(toy_dist(), 300, 1);
  auto b = sample_ensemble(toy_dist(), 300, 2);
  ParticleEnsemble both = a;
  both.x.insert(both.x.end(), b.x.begin(), b.x.end());
  both.y.insert(both.y.end(), b.y.begin(), b.y.end());
  both.vx.insert(both.vx.end(), b.vx.begin(), b.vx.end());
  both.vy.insert(both.vy.end(), b.vy.begin(), b.vy.end());
  both.w.insert(both.w.end(), b.w.begin(), b.w.end());
  const auto ma = compute_moments(state_from(a, ctx));
  const auto mb = compute_moments(state_from(b, ctx));
  const auto mc = compute_moments(state_from(both, ctx));
  const double scale = mc.rho.max_abs();
  for (std::size_t i = 0; i < mc.rho.values.size(); ++i) {
    CHECK(std::abs(mc.rho.values[i] - (ma.rho.values[i] + mb.rho.values[i])) <= 1e-13 * scale);
  }
}

TEST_CASE("velocity marginal: mass, symmetry, escapees") {
  const auto grid = toy_grid();
  StepContext ctx(grid, regime_coefficients(Regime::Fluid, 1.0), MagneticModel::uniform2d(1.0));
  const auto v_grid = Grid2D::make(32, 32, -6.0, 6.0, -6.0, 6.0);

  // single particle at v = (2, 0): mass lands in the stencil around it
  ParticleEnsemble one;
  one.x = {1.0};
  one.y = {1.0};
  one.vx = {2.0};
  one.vy = {0.0};
  one.w = {0.9};
  SimState s1 = state_from(one, ctx);
  const auto m1 = velocity_marginal(s1, v_grid);
  CHECK(m1.escapees == 0);
  CHECK(std::abs(v_grid.cell_area() * pairwise_sum(m1.values) - 0.9) <= 1e-12);
  // locate the peak: within one cell of v = (2, 0)
  std::size_t arg = 0;
  for (std::size_t i = 0; i < m1.values.size(); ++i) {
    if (m1.values[i] > m1.values[arg]) arg = i;
  }
  const int pi = static_cast<int>(arg) % v_grid.nx;
  const int pj = static_cast<int>(arg) / v_grid.nx;
  CHECK(std::abs(v_grid.x_lo + pi * v_grid.dx() - 2.0) <= v_grid.dx());
  CHECK(std::abs(v_grid.y_lo + pj * v_grid.dy() - 0.0) <= v_grid.dy());

  // mirror-symmetric ensemble: chi symmetric under v -> -v
  ParticleEnsemble sym;
  UniformRng rng(8);
  for (int k = 0; k < 100; ++k) {
    const double uvx = rng.next_in(-3, 3);
    const double uvy = rng.next_in(-3, 3);
    for (double sgn : {1.0, -1.0}) {
      sym.x.push_back(rng.next_in(0.0, 4.0 * M_PI));
      sym.y.push_back(rng.next_in(0.0, 2.0 * M_PI));
      sym.vx.push_back(sgn * uvx);
      sym.vy.push_back(sgn * uvy);
      sym.w.push_back(0.5);
    }
  }
  SimState ss = state_from(sym, ctx);
  const auto ms = velocity_marginal(ss, v_grid);
  // node -v of node (i,j) is (nx-i, ny-j) mod n on the symmetric grid
  for (int j = 0; j < v_grid.ny; ++j) {
    for (int i = 0; i < v_grid.nx; ++i) {
      const int ri = (v_grid.nx - i) % v_grid.nx;
      const int rj = (v_grid.ny - j) % v_grid.ny;
      const double a = ms.values[static_cast<std::size_t>(v_grid.index(i, j))];
      const double b = ms.values[static_cast<std::size_t>(v_grid.index(ri, rj))];
      CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }
  }

  // out-of-box particles are counted, not deposited
  ParticleEnsemble fast = one;
  fast.vx = {12.0};
  SimState sf = state_from(fast, ctx);
  const auto mf = velocity_marginal(sf, v_grid);
  CHECK(mf.escapees == 1);
  CHECK(pairwise_sum(mf.values) == 0.0);
}

TEST_CASE("two-bump marginal shows bumps near v1 = +-2") {
  const auto grid = toy_grid();
  StepContext ctx(grid, regime_coefficients(Regime::Fluid, 1.0), MagneticModel::uniform2d(1.0));
  const auto ens = sample_ensemble(toy_dist(), 100000, 321);
  SimState st = state_from(ens, ctx);
  const auto v_grid = Grid2D::make(64, 64, -6.0, 6.0, -6.0, 6.0);
  const auto chi = velocity_marginal(st, v_grid);
  CHECK(chi.escapees == 0);
  // project onto v1 and find the peaks on each half-line
  std::vector<double> profile(static_cast<std::size_t>(v_grid.nx), 0.0);
  for (int j = 0; j < v_grid.ny; ++j) {
    for (int i = 0; i < v_grid.nx; ++i) {
      profile[static_cast<std::size_t>(i)] +=
          chi.values[static_cast<std::size_t>(v_grid.index(i, j))];
    }
  }
  int arg_pos = v_grid.nx / 2, arg_neg = 0;
  for (int i = v_grid.nx / 2; i < v_grid.nx; ++i) {
    if (profile[static_cast<std::size_t>(i)] > profile[static_cast<std::size_t>(arg_pos)])
      arg_pos = i;
  }
  for (int i = 0; i < v_grid.nx / 2; ++i) {
    if (profile[static_cast<std::size_t>(i)] > profile[static_cast<std::size_t>(arg_neg)])
      arg_neg = i;
  }
  CHECK(std::abs(v_grid.x_lo + arg_pos * v_grid.dx() - 2.0) <= v_grid.dx());
  CHECK(std::abs(v_grid.x_lo + arg_neg * v_grid.dx() + 2.0) <= v_grid.dx());
}

TEST_CASE("relative error of moment pairs") {
  const auto grid = toy_grid();
  StepContext ctx(grid, regime_coefficients(Regime::Fluid, 1.0), MagneticModel::uniform2d(1.0));
  const auto ens = sample_ensemble(toy_dist(), 500, 44);
  SimState st = state_from(ens, ctx);
  const auto m = compute_moments(st);

  CHECK(relative_error(m, m) == 0.0);

  MomentSet doubled = m;
  for (auto& v : doubled.rho.values) v *= 2.0;
  CHECK(relative_error(doubled, m) == doctest::Approx(1.0).epsilon(1e-14));

  MomentSet bumped = m;
  const double delta = 0.125;
  bumped.rho.values[7] += delta;
  CHECK(relative_error(bumped, m) == doctest::Approx(delta / m.rho.max_abs()).epsilon(1e-12));

  MomentSet zero = m;
  for (auto& v : zero.rho.values) v = 0.0;
  CHECK_THROWS_AS(relative_error(m, zero), NumericalError);
}

TEST_CASE("energy error series") {
  std::vector<StepRecord> recs;
  for (int i = 0; i < 5; ++i) {
    recs.push_back({i, 0.1 * i, 2.0, 0.0, GammaBranch::RealRoot, 0.0});
  }
  auto series = energy_error_series(recs);
  for (double e : series) CHECK(e == 0.0);

  recs[3].energy = 2.0 + 2e-6;
  series = energy_error_series(recs);
  CHECK(series[3] == doctest::Approx(1e-6).epsilon(1e-12));

  recs[0].energy = 0.0;
  CHECK_THROWS_AS(energy_error_series(recs), NumericalError);
}
