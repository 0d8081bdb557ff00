// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "lgi/fock_oracle.hpp"
#include "lgi/optimizer.hpp"

namespace {

using namespace lgi;

opt::Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? opt::Execution::serial : opt::Execution::parallel;
}

void BM_CoarseGrid(benchmark::State& state) {
  const opt::SweepGrid grid;
  const StateKind kind = state.range(1) == 0 ? StateKind::coherent : StateKind::cat;
  for (auto _ : state)
    benchmark::DoNotOptimize(opt::coarse_grid(kind, 0.5, ModeParams(1.0, 0.0), 0.5, grid, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * grid.n_theta * grid.n_r);
}
BENCHMARK(BM_CoarseGrid)->ArgsProduct({{0, 1}, {0, 1}})->ArgNames({"parallel", "cat"})->Unit(benchmark::kMillisecond);

void BM_OptimizeAt(benchmark::State& state) {
  const opt::SweepGrid grid;
  for (auto _ : state)
    benchmark::DoNotOptimize(opt::optimize_at(0.5, StateKind::cat, 0.5, ModeParams(1.0, 0.0), grid, exec_of(state)));
}
BENCHMARK(BM_OptimizeAt)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  opt::SweepGrid grid;
  grid.tau_max = 1.0;
  grid.d_tau = 0.1;
  grid.tau_min = 0.1;
  for (auto _ : state)
    benchmark::DoNotOptimize(opt::sweep(grid, StateKind::coherent, 0.5, ModeParams(1.0, 0.0), exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.taus().size()));
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_OracleEvolve(benchmark::State& state) {
  oracle::OracleConfig cfg;
  cfg.n_max = static_cast<int>(state.range(0));
  const oracle::FockVector v = oracle::coherent_vector(1.5, cfg);
  const oracle::FockMatrix rho0 = v * v.adjoint();
  int steps = 0;
  for (auto _ : state) {
    oracle::FockMatrix rho = rho0;
    steps += oracle::evolve(rho, ModeParams(1.0, 0.5), 0.5, cfg);
    benchmark::DoNotOptimize(rho.data());
  }
  state.counters["steps"] = benchmark::Counter(steps, benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_OracleEvolve)->Arg(32)->Arg(64)->Arg(96)->ArgName("n_max")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
