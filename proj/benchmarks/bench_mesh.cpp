#include <benchmark/benchmark.h>

#include <cmath>

#include "erpic/deposit.hpp"
#include "erpic/poisson.hpp"
#include "erpic/rng.hpp"

namespace {

erpic::ParticleEnsemble random_ensemble(const erpic::Grid2D& g, std::size_t n) {
  erpic::UniformRng rng(42);
  erpic::ParticleEnsemble ens;
  for (std::size_t k = 0; k < n; ++k) {
    ens.x.push_back(rng.next_in(g.x_lo, g.x_hi));
    ens.y.push_back(rng.next_in(g.y_lo, g.y_hi));
    ens.vx.push_back(rng.next_in(-3.0, 3.0));
    ens.vy.push_back(rng.next_in(-3.0, 3.0));
  }
  ens.w.assign(n, 1.0 / static_cast<double>(n));
  return ens;
}

void BM_DepositDensity(benchmark::State& state) {
  const auto grid = erpic::Grid2D::make(32, 16, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI);
  const auto ens = random_ensemble(grid, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto rho = erpic::deposit_density(ens, grid);
    benchmark::DoNotOptimize(rho.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DepositDensity)->Arg(10240)->Arg(102400);

void BM_PoissonSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto grid = erpic::Grid2D::make(n, n, 0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI);
  erpic::ScalarField rho(grid);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      rho.at(i, j) = std::cos(2.0 * M_PI * i / n) + std::sin(4.0 * M_PI * j / n);
    }
  }
  erpic::PoissonSolver2D solver(grid);
  for (auto _ : state) {
    auto field = solver.solve(rho);
    benchmark::DoNotOptimize(field.e1.data());
  }
}
BENCHMARK(BM_PoissonSolve)->Arg(32)->Arg(64)->Arg(128);

void BM_InterpolateBatch(benchmark::State& state) {
  const auto grid = erpic::Grid2D::make(32, 16, 0.0, 4.0 * M_PI, 0.0, 2.0 * M_PI);
  const auto ens = random_ensemble(grid, static_cast<std::size_t>(state.range(0)));
  const auto field = erpic::solve_poisson(erpic::deposit_density(ens, grid));
  std::vector<double> ex(ens.size()), ey(ens.size());
  for (auto _ : state) {
    erpic::interpolate_batch(field, ens.x, ens.y, ex, ey);
    benchmark::DoNotOptimize(ex.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InterpolateBatch)->Arg(10240)->Arg(102400);

}  // namespace
