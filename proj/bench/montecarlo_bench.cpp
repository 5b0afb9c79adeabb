// Compares the threaded sampling kernel against the serial reference on the
// same workload, so the speedup (or lack of it) is visible per sample count.
#include <benchmark/benchmark.h>

#include "qorder/hardy.hpp"
#include "qorder/montecarlo.hpp"

namespace {

using namespace qorder;

const HardyScenario& scenario() {
  static const HardyScenario s =
      build_hardy({.alpha = 0.7853981633974483, .beta = 0.7853981633974483});
  return s;
}

void bm_serial(benchmark::State& state) {
  const auto& s = scenario();
  const DensityOperator rho0 = DensityOperator::pure(s.ket0, s.space);
  RunConfig config{.n_runs = static_cast<std::uint64_t>(state.range(0)),
                   .seed = 42,
                   .order = OrderTag::r_first};
  for (auto _ : state) {
    CountTable table = simulate_serial(rho0, s.l1, s.r1, config);
    benchmark::DoNotOptimize(table);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_parallel(benchmark::State& state) {
  const auto& s = scenario();
  const DensityOperator rho0 = DensityOperator::pure(s.ket0, s.space);
  RunConfig config{.n_runs = static_cast<std::uint64_t>(state.range(0)),
                   .seed = 42,
                   .order = OrderTag::r_first};
  for (auto _ : state) {
    CountTable table = simulate(rho0, s.l1, s.r1, config);
    benchmark::DoNotOptimize(table);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(bm_serial)->Arg(10000)->Arg(100000)->Arg(1000000);
BENCHMARK(bm_parallel)->Arg(10000)->Arg(100000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
