#include <benchmark/benchmark.h>

#include "erpic/integrator.hpp"
#include "erpic/presets.hpp"
#include "erpic/sampling.hpp"

namespace {

struct DeskSetup {
  erpic::SimulationConfig cfg;
  erpic::StepContext ctx;
  erpic::SimState state;

  DeskSetup()
      : cfg(erpic::preset("example1", erpic::PresetScale::Desk)),
        ctx(cfg.make_grid(), cfg.make_coeffs(), cfg.make_magnetic()),
        state(erpic::make_state(
            erpic::sample_ensemble(cfg.make_distribution(), cfg.init.particles, cfg.init.seed),
            ctx)) {}
};

void BM_StepRS1(benchmark::State& state) {
  DeskSetup s;
  for (auto _ : state) {
    auto rec = erpic::step_rs1(s.state, 0.05, s.ctx);
    benchmark::DoNotOptimize(rec.energy);
  }
}
BENCHMARK(BM_StepRS1);

void BM_StepRS2(benchmark::State& state) {
  DeskSetup s;
  for (auto _ : state) {
    auto rec = erpic::step_rs2(s.state, 0.05, s.ctx);
    benchmark::DoNotOptimize(rec.energy);
  }
}
BENCHMARK(BM_StepRS2);

void BM_Rk4ReferenceStep(benchmark::State& state) {
  DeskSetup s;
  for (auto _ : state) {
    s.state = erpic::rk4_reference(std::move(s.state), 1e-3, 1, s.ctx);
    benchmark::DoNotOptimize(s.state.energy);
  }
}
BENCHMARK(BM_Rk4ReferenceStep);

}  // namespace
