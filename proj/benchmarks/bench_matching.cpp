#include <benchmark/benchmark.h>

#include <random>

#include "alphamix/matching.hpp"

using namespace alphamix;

namespace {

BitGrid random_grid(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double p) {
  std::bernoulli_distribution bit(p);
  BitGrid g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) g.set(r, c, bit(rng));
  return g;
}

IrisTemplate random_template(std::mt19937_64& rng) {
  return IrisTemplate(random_grid(rng, 20, 512, 0.5), random_grid(rng, 20, 512, 0.85));
}

void BM_Hamming(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const IrisTemplate a = random_template(rng), b = random_template(rng);
  const auto range = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hamming_distance(a, b, range));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Hamming)->Arg(0)->Arg(8);

// One probe against many samples, rotations precomputed once.
void BM_ShiftedProbe(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const IrisTemplate probe = random_template(rng);
  std::vector<IrisTemplate> others;
  for (int i = 0; i < 64; ++i) others.push_back(random_template(rng));
  const auto range = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const ShiftedProbe sp(probe, range);
    for (const IrisTemplate& o : others) benchmark::DoNotOptimize(sp.match(o));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_ShiftedProbe)->Arg(0)->Arg(8);

void BM_DirectMany(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const IrisTemplate probe = random_template(rng);
  std::vector<IrisTemplate> others;
  for (int i = 0; i < 64; ++i) others.push_back(random_template(rng));
  const auto range = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    for (const IrisTemplate& o : others) benchmark::DoNotOptimize(hamming_distance(o, probe, range));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_DirectMany)->Arg(0)->Arg(8);

}  // namespace
