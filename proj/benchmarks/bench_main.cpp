#include <vector>

#include <benchmark/benchmark.h>

#include "levrot/commands.hpp"
#include "levrot/config.hpp"
#include "levrot/geometry.hpp"
#include "levrot/quantum_sim.hpp"
#include "levrot/trap.hpp"

using namespace levrot;

static void BM_CouplingMap200(benchmark::State& state) {
  studio::RunConfig cfg;
  cfg.fig2_map.grid.field_points = 200;
  cfg.fig2_map.grid.psi_points = 200;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(studio::cmd_fig2_map(cfg, threads));
}
BENCHMARK(BM_CouplingMap200)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SurfaceMoments(benchmark::State& state) {
  const geometry::ParticleSpec spec{geometry::Composite{80e-9, 200e-9, 5e-9}};
  for (auto _ : state) benchmark::DoNotOptimize(geometry::surface_moments(spec));
}
BENCHMARK(BM_SurfaceMoments)->Unit(benchmark::kMicrosecond);

static void BM_MonodromyTrace(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trap::monodromy_trace(0.01, 0.6));
}
BENCHMARK(BM_MonodromyTrace)->Unit(benchmark::kMicrosecond);

static void BM_Evolve(benchmark::State& state) {
  const double wphi = kTwoPi * 5e6;
  const quantum::DressedLevels lv{kTwoPi * 250e6, -kTwoPi * 250e6, kTwoPi * 250e6 + wphi};
  const auto model = quantum::build_model(lv, wphi, 57e3, static_cast<int>(state.range(0)),
                                          quantum::ModelKind::FullRabi);
  std::vector<double> t(201);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = 2e-7 * static_cast<double>(k);
  const auto rho = quantum::pure_state(model, quantum::Level::Plus, 1);
  const bool dissipative = state.range(1) != 0;
  const quantum::LindbladChannels ch = dissipative ? quantum::LindbladChannels{1e3, 1e4, 0.0}
                                                   : quantum::LindbladChannels{};
  for (auto _ : state) benchmark::DoNotOptimize(quantum::evolve(model, rho, t, ch));
}
BENCHMARK(BM_Evolve)->Args({4, 0})->Args({8, 0})->Args({4, 1})->Args({8, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
