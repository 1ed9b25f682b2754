#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "squeeze/correlators.hpp"
#include "squeeze/montecarlo.hpp"
#include "squeeze/propagator.hpp"
#include "squeeze/signal.hpp"

using namespace squeeze;

namespace {

std::vector<double> grid(double stop, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(stop * i / (n - 1));
  return v;
}

void BM_PropagateGreen(benchmark::State& state) {
  const auto s = make_phase_jump(0.5, std::numbers::pi / 2, 1.0);
  const auto t = grid(6.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propagate_green(s, -1.0, t));
}
BENCHMARK(BM_PropagateGreen)->Arg(61)->Arg(601);

void BM_GreenConstant(benchmark::State& state) {
  const DriveSample d{0.3, 0.5, 1.0};
  double dt = 0.0;
  for (auto _ : state) {
    dt += 1e-3;
    benchmark::DoNotOptimize(green_constant(d, dt));
  }
}
BENCHMARK(BM_GreenConstant);

void BM_CorrelatorGrid(benchmark::State& state) {
  const auto s = make_phase_jump(0.5, std::numbers::pi / 2, 1.0);
  const std::vector<double> t1{0.25, 1.0, 2.0, 30.0};
  const auto tau = grid(6.0, 61);
  for (auto _ : state)
    benchmark::DoNotOptimize(correlator_grid(s, QuadratureSchedule::constant(0.0), t1, tau, InitialCondition{}, {}, 1));
}
BENCHMARK(BM_CorrelatorGrid)->Unit(benchmark::kMillisecond);

void BM_MonteCarloPair(benchmark::State& state) {
  const auto s = DriveSchedule::constant(0.0, 0.5, 1.0);
  McConfig cfg;
  cfg.dt = 0.01 / 1.5;
  cfg.bin_steps = 15;
  cfg.n_traj = static_cast<std::size_t>(state.range(0));
  cfg.t_end = 3.0;
  cfg.threads = 1;
  cfg.initial = CustomMoments{Complex(-1.0 / 3), 2.0 / 3};
  const std::vector<double> tau{0.0, 1.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_correlator_pair(s, cfg, 0.5, tau));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.n_traj * cfg.n_steps()));
}
BENCHMARK(BM_MonteCarloPair)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_IntegratedVariance(benchmark::State& state) {
  const auto s = make_phase_jump(0.5, std::numbers::pi / 2, 1.0);
  const auto w = WeightFunction::box(0.0, static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrated_variance(s, QuadratureSchedule::constant(0.0), w, InitialCondition{}, {}, {}, 1));
}
BENCHMARK(BM_IntegratedVariance)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
