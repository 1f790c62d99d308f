// Serial reference against the OpenMP trial kernel.

#include <benchmark/benchmark.h>

#include "sellab/selection.hpp"

using namespace sellab;

namespace {

void run(benchmark::State& state, Selector selector, Exec exec) {
  const GeodesicSpace space = GeodesicSpace::euclidean(2);
  const SelectionConfig cfg;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const LipschitzReport r =
        empirical_lipschitz(space, selector, n, 100, 0.05, 1, PerturbMode::unconstrained, cfg, exec);
    benchmark::DoNotOptimize(r.max_ratio);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}

void mp_serial(benchmark::State& s) { run(s, Selector::mean_point, Exec::serial); }
void mp_parallel(benchmark::State& s) { run(s, Selector::mean_point, Exec::parallel); }
void select_mp_serial(benchmark::State& s) { run(s, Selector::select_mp, Exec::serial); }
void select_mp_parallel(benchmark::State& s) { run(s, Selector::select_mp, Exec::parallel); }

}  // namespace

BENCHMARK(mp_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(mp_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(select_mp_serial)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(select_mp_parallel)->Arg(3)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
