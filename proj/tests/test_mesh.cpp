#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <vector>

#include "erpic/deposit.hpp"
#include "erpic/errors.hpp"
#include "erpic/io.hpp"
#include "erpic/math.hpp"
#include "erpic/poisson.hpp"
#include "erpic/rng.hpp"

using namespace erpic;

namespace {

ParticleEnsemble random_ensemble(const Grid2D& g, std::size_t n, std::uint64_t seed,
                                 double weight = 0.5) {
  UniformRng rng(seed);
  ParticleEnsemble ens;
  for (std::size_t k = 0; k < n; ++k) {
    ens.x.push_back(rng.next_in(g.x_lo, g.x_hi));
    ens.y.push_back(rng.next_in(g.y_lo, g.y_hi));
    ens.vx.push_back(rng.next_in(-3.0, 3.0));
    ens.vy.push_back(rng.next_in(-3.0, 3.0));
  }
  ens.w.assign(n, weight);
  return ens;
}

double grid_integral(const ScalarField& f) {
  return f.grid.cell_area() * pairwise_sum(f.values);
}

// naive O(N^2) 2D DFT, the independent route for the Parseval check
std::vector<std::complex<double>> naive_dft2(const std::vector<double>& v, int nx, int ny) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(nx) * ny);
  for (int kj = 0; kj < ny; ++kj) {
    for (int ki = 0; ki < nx; ++ki) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          const double phase = -2.0 * M_PI * (static_cast<double>(ki) * i / nx +
                                              static_cast<double>(kj) * j / ny);
          acc += v[static_cast<std::size_t>(j) * nx + i] *
                 std::complex<double>(std::cos(phase), std::sin(phase));
        }
      }
      out[static_cast<std::size_t>(kj) * nx + ki] = acc;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("deposit: empty ensemble gives a zero field") {
  const auto g = Grid2D::make(16, 16, 0.0, 1.0, 0.0, 1.0);
  ParticleEnsemble ens;
  const auto rho = deposit_density(ens, g);
  for (double v : rho.values) CHECK(v == 0.0);
}

TEST_CASE("deposit: single particle conserves its charge") {
  const auto g = Grid2D::make(32, 16, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI);
  for (double w : {1.0, 3.7}) {
    auto ens = random_ensemble(g, 1, 11, w);
    const auto rho = deposit_density(ens, g);
    CHECK(std::abs(grid_integral(rho) - w) <= 1e-13 * w);
  }
}

TEST_CASE("deposit: linearity over particles") {
  const auto g = Grid2D::make(16, 16, -1.0, 1.0, -1.0, 1.0);
  auto both = random_ensemble(g, 2, 5);
  ParticleEnsemble first, second;
  for (auto* e : {&first, &second}) {
    e->w.assign(1, both.w[0]);
    e->vx.assign(1, 0.0);
    e->vy.assign(1, 0.0);
  }
  first.x.assign(1, both.x[0]);
  first.y.assign(1, both.y[0]);
  second.x.assign(1, both.x[1]);
  second.y.assign(1, both.y[1]);
  const auto r_both = deposit_density(both, g);
  const auto r1 = deposit_density(first, g);
  const auto r2 = deposit_density(second, g);
  const double scale = r_both.max_abs();
  for (std::size_t i = 0; i < r_both.values.size(); ++i) {
    CHECK(std::abs(r_both.values[i] - (r1.values[i] + r2.values[i])) <= 1e-15 * scale);
  }
}

TEST_CASE("deposit: charge conservation on random ensembles") {
  const auto g = Grid2D::make(24, 12, 0.0, 3.0, -1.0, 1.0);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto ens = random_ensemble(g, 500, seed, 0.25);
    const double total = ens.total_weight();
    const auto rho = deposit_density(ens, g);
    CHECK(std::abs(grid_integral(rho) - total) <= 1e-12 * total);
  }
}

TEST_CASE("deposit: exact-cell shift cyclically permutes the field bitwise") {
  // dx = dy = 1 and quarter-integer positions keep the shifted offsets
  // bitwise identical
  const auto g = Grid2D::make(16, 8, 0.0, 16.0, 0.0, 8.0);
  UniformRng rng(99);
  ParticleEnsemble ens;
  const std::size_t n = 200;
  for (std::size_t k = 0; k < n; ++k) {
    ens.x.push_back(0.25 * std::floor(rng.next() * 64.0));
    ens.y.push_back(0.25 * std::floor(rng.next() * 32.0));
    ens.vx.push_back(0.0);
    ens.vy.push_back(0.0);
  }
  ens.w.assign(n, 1.0);
  const auto base = deposit_density(ens, g);
  ParticleEnsemble shifted = ens;
  for (auto& xv : shifted.x) xv += 1.0;
  shifted.canonicalize(g);
  const auto moved = deposit_density(shifted, g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      CHECK(moved.at((i + 1) % g.nx, j) == base.at(i, j));
    }
  }
}

TEST_CASE("deposit: 3-component velocities are rejected") {
  const auto g = Grid2D::make(16, 16, 0.0, 1.0, 0.0, 1.0);
  auto ens = random_ensemble(g, 4, 7);
  ens.vz.assign(4, 1.0);
  CHECK_THROWS_AS(deposit_density(ens, g), NumericalError);
}

TEST_CASE("interpolate: partition of unity reproduces constants") {
  const auto g = Grid2D::make(16, 8, 0.0, 2.0, 0.0, 1.0);
  VectorField2D field(g);
  for (auto& v : field.e1) v = 2.5;
  for (auto& v : field.e2) v = -0.75;
  for (auto p : {Vec2{0.33, 0.91}, Vec2{1.999, 0.0}, Vec2{-5.2, 14.0}}) {
    const Vec2 e = interpolate_field(field, p);
    CHECK(e.x == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(e.y == doctest::Approx(-0.75).epsilon(1e-14));
  }
  VectorField2D zero(g);
  const Vec2 e0 = interpolate_field(zero, {0.5, 0.5});
  CHECK(e0.x == 0.0);
  CHECK(e0.y == 0.0);
}

TEST_CASE("interpolate: sampled sin field against the pointwise oracle") {
  // The same-kernel gather is a quasi-interpolation of raw node samples:
  // second order, error ~ (dx^2/4)|f''|. At this resolution that is about
  // 1e-2; the oracle below pins the measured bound.
  const auto g = Grid2D::make(64, 32, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI);
  VectorField2D field(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      field.e1[static_cast<std::size_t>(g.index(i, j))] = std::sin(g.x_lo + i * g.dx());
    }
  }
  const Vec2 e = interpolate_field(field, {1.0, 1.0});
  CHECK(std::abs(e.x - std::sin(1.0)) <= 0.25 * g.dx() * g.dx() * 1.05);
  CHECK(std::abs(e.y) == 0.0);

  // halving dx shrinks the error ~4x (second-order gather)
  const auto g2 = Grid2D::make(128, 32, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI);
  VectorField2D field2(g2);
  for (int j = 0; j < g2.ny; ++j) {
    for (int i = 0; i < g2.nx; ++i) {
      field2.e1[static_cast<std::size_t>(g2.index(i, j))] = std::sin(g2.x_lo + i * g2.dx());
    }
  }
  const Vec2 e2 = interpolate_field(field2, {1.0, 1.0});
  const double ratio = std::abs(e.x - std::sin(1.0)) / std::abs(e2.x - std::sin(1.0));
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("deposit/interpolate adjointness") {
  const auto g = Grid2D::make(16, 12, 0.0, 2.0, 0.0, 1.5);
  const auto ens = random_ensemble(g, 300, 13, 0.7);
  UniformRng rng(17);
  VectorField2D gfield(g);
  for (auto& v : gfield.e1) v = rng.next_in(-1.0, 1.0);
  const auto rho = deposit_density(ens, g);
  std::vector<double> ex(ens.size()), ey(ens.size());
  interpolate_batch(gfield, ens.x, ens.y, ex, ey);
  double lhs = 0.0;
  for (std::size_t k = 0; k < ens.size(); ++k) lhs += ens.w[k] * ex[k];
  double rhs = 0.0;
  for (std::size_t i = 0; i < rho.values.size(); ++i) rhs += gfield.e1[i] * rho.values[i];
  rhs *= g.cell_area();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("poisson: constant density gives a zero field") {
  const auto g = Grid2D::make(16, 16, 0.0, 2.0, 0.0, 2.0);
  ScalarField rho(g);
  for (auto& v : rho.values) v = 4.2;
  const auto e = solve_poisson(rho);
  for (std::size_t i = 0; i < e.e1.size(); ++i) {
    CHECK(std::abs(e.e1[i]) <= 1e-14);
    CHECK(std::abs(e.e2[i]) <= 1e-14);
  }
}

TEST_CASE("poisson: manufactured single mode") {
  const auto g = Grid2D::make(32, 32, 0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI);
  ScalarField rho(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      rho.at(i, j) = std::cos(g.x_lo + i * g.dx());
    }
  }
  const auto e = solve_poisson(rho);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_lo + i * g.dx();
      CHECK(std::abs(e.e1[static_cast<std::size_t>(g.index(i, j))] - std::sin(x)) <= 1e-12);
      CHECK(std::abs(e.e2[static_cast<std::size_t>(g.index(i, j))]) <= 1e-12);
    }
  }
}

TEST_CASE("poisson: two-mode superposition against the analytic formulas") {
  // rho' = cos(x) + sin(2 * 2pi y / Ly) on [0,2pi] x [0,1]
  const auto g = Grid2D::make(32, 16, 0.0, 2.0 * M_PI, 0.0, 1.0);
  const double ky = 2.0 * 2.0 * M_PI / g.ly();
  ScalarField rho(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_lo + i * g.dx();
      const double y = g.y_lo + j * g.dy();
      rho.at(i, j) = std::cos(x) + std::sin(ky * y);
    }
  }
  const auto e = solve_poisson(rho);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_lo + i * g.dx();
      const double y = g.y_lo + j * g.dy();
      const std::size_t idx = static_cast<std::size_t>(g.index(i, j));
      CHECK(std::abs(e.e1[idx] - std::sin(x)) <= 1e-12);
      CHECK(std::abs(e.e2[idx] + std::cos(ky * y) / ky) <= 1e-12);
    }
  }
}

TEST_CASE("poisson: spectral divergence residual on deposited densities") {
  const auto g = Grid2D::make(32, 16, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI);
  PoissonSolver2D solver(g);
  // band-limited input: a few smooth modes
  ScalarField rho(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_lo + i * g.dx();
      const double y = g.y_lo + j * g.dy();
      rho.at(i, j) = 1.0 + 0.3 * std::cos(0.5 * x) + 0.2 * std::sin(y) +
                     0.1 * std::cos(x) * std::sin(2.0 * y);
    }
  }
  const auto e = solver.solve(rho);
  const auto div = solver.divergence(e);
  const double mean = pairwise_sum(rho.values) / static_cast<double>(rho.values.size());
  for (std::size_t i = 0; i < div.values.size(); ++i) {
    CHECK(std::abs(div.values[i] - (rho.values[i] - mean)) <= 1e-12);
  }
}

TEST_CASE("poisson: field components have zero mean") {
  const auto g = Grid2D::make(16, 16, 0.0, 1.0, 0.0, 1.0);
  const auto ens = random_ensemble(g, 200, 3);
  const auto e = solve_poisson(deposit_density(ens, g));
  CHECK(std::abs(pairwise_sum(e.e1)) <= 1e-11 * static_cast<double>(e.e1.size()));
  CHECK(std::abs(pairwise_sum(e.e2)) <= 1e-11 * static_cast<double>(e.e2.size()));
}

TEST_CASE("poisson: non-finite input is rejected") {
  const auto g = Grid2D::make(16, 16, 0.0, 1.0, 0.0, 1.0);
  ScalarField rho(g);
  rho.values[5] = std::nan("");
  CHECK_THROWS_AS(solve_poisson(rho), NumericalError);
}

TEST_CASE("field_energy: constants and the zero field") {
  const auto g = Grid2D::make(16, 16, 0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI);
  VectorField2D zero(g);
  CHECK(field_energy(zero, 1.0) == 0.0);
  VectorField2D unit(g);
  for (auto& v : unit.e1) v = 1.0;
  const double expected = 0.5 * (2.0 * M_PI) * (2.0 * M_PI);
  CHECK(field_energy(unit, 1.0) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(field_energy(unit, 0.25) == doctest::Approx(0.25 * expected).epsilon(1e-13));
}

TEST_CASE("field_energy: grid sum equals the Parseval sum") {
  const auto g = Grid2D::make(16, 8, 0.0, 2.0, 0.0, 1.0);
  UniformRng rng(23);
  VectorField2D e(g);
  for (auto& v : e.e1) v = rng.next_in(-1.0, 1.0);
  for (auto& v : e.e2) v = rng.next_in(-1.0, 1.0);
  const double grid_sum = field_energy(e, 1.0);
  const auto f1 = naive_dft2(e.e1, g.nx, g.ny);
  const auto f2 = naive_dft2(e.e2, g.nx, g.ny);
  double spec_sum = 0.0;
  for (std::size_t i = 0; i < f1.size(); ++i) spec_sum += std::norm(f1[i]) + std::norm(f2[i]);
  spec_sum *= 0.5 * g.cell_area() / static_cast<double>(g.size());
  CHECK(grid_sum == doctest::Approx(spec_sum).epsilon(1e-12));
}

TEST_CASE("snapshot files round-trip") {
  const auto g = Grid2D::make(8, 9, 0.0, 1.0, -2.0, 3.0);
  ScalarField f(g);
  UniformRng rng(31);
  for (auto& v : f.values) v = rng.next_in(-10.0, 10.0);
  const auto path = std::filesystem::temp_directory_path() / "erpic_test_snapshot.csv";
  write_snapshot(path, f, 1.25);
  double t = 0.0;
  const auto back = read_snapshot(path, &t);
  CHECK(t == 1.25);
  CHECK(back.grid == g);
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(back.values[i] == f.values[i]);
  std::filesystem::remove(path);
}

TEST_CASE("grid invariants are enforced") {
  CHECK_THROWS_AS(Grid2D::make(4, 16, 0.0, 1.0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid2D::make(16, 16, 1.0, 0.0, 0.0, 1.0), ConfigError);
}
