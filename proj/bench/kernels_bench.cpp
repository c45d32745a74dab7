// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "cachegame/bestresponse.hpp"
#include "cachegame/enumeration.hpp"
#include "cachegame/solver.hpp"
#include "cachegame/strategies.hpp"

using namespace cachegame;

namespace {

struct PayoffFixture {
  GameConfig cfg;
  Grid grid;
  std::vector<std::vector<GridHider>> orbits;
  ScanPolicy policy;

  explicit PayoffFixture(int m)
      : cfg{4, 2, Rational(2)},
        grid{m},
        orbits(row_orbits(enumerate_grid_hiders(cfg, grid, {.reduce_symmetry = true}), grid, true)),
        policy(GridGame::make(cfg, grid)) {}
};

void BM_ColumnPayoffs(benchmark::State& state) {
  const PayoffFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(column_payoffs(f.policy, f.orbits));
}

void BM_ColumnPayoffsSerial(benchmark::State& state) {
  const PayoffFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(column_payoffs_serial(f.policy, f.orbits));
}

void BM_ScriptScan(benchmark::State& state) {
  const GameConfig cfg{4, 2, lemma_spec(4).h_lo};
  const ScriptMixture mix = lemma_script(4);
  const Grid scan{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(script_min_win_prob(mix, cfg, scan));
}

void BM_ScriptScanSerial(benchmark::State& state) {
  const GameConfig cfg{4, 2, lemma_spec(4).h_lo};
  const ScriptMixture mix = lemma_script(4);
  const Grid scan{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(script_min_win_prob_serial(mix, cfg, scan));
}

void BM_BoundSweep(benchmark::State& state) {
  const int n_hi = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem_bound_sweep(4, n_hi, 60));
}

void BM_BoundSweepSerial(benchmark::State& state) {
  const int n_hi = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem_bound_sweep_serial(4, n_hi, 60));
}

}  // namespace

BENCHMARK(BM_ColumnPayoffs)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColumnPayoffsSerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScriptScan)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScriptScanSerial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundSweep)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundSweepSerial)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
