#include <benchmark/benchmark.h>

#include "alphamix/attacks.hpp"
#include "alphamix/calibration.hpp"
#include "alphamix/synthgen.hpp"

using namespace alphamix;

namespace {

SynthPopulation make_population(std::size_t identities) {
  SimPopulationSpec spec;
  spec.n_identities = identities;
  spec.wolf_count = identities >= 10 ? 3 : 0;
  spec.seed = 11;
  return synth_population(spec);
}

void BM_Coverage(benchmark::State& state) {
  const SynthPopulation sp = make_population(static_cast<std::size_t>(state.range(0)));
  const Population& p = sp.population;
  for (auto _ : state) benchmark::DoNotOptimize(coverage(p[0], p, 0.35, {}, 8));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}
BENCHMARK(BM_Coverage)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_HillClimb(benchmark::State& state) {
  const SynthPopulation sp = make_population(static_cast<std::size_t>(state.range(0)));
  const Population& p = sp.population;
  const double tau = threshold_at_fmr(imposter_scores(p, 8), 0.01).tau;
  SearchConfig cfg;
  cfg.max_iterations = 10;
  for (auto _ : state) benchmark::DoNotOptimize(hill_climb(p, tau, MixOp::Or, cfg, MaskPolicy::SameOperator, 8));
}
BENCHMARK(BM_HillClimb)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
