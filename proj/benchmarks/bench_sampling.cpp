#include <benchmark/benchmark.h>

#include "hyperarr/sampler.hpp"

using namespace hyperarr;

namespace {

void BM_MorseResonance(benchmark::State& state) {
  const Arrangement A = resonance_arrangement(static_cast<std::size_t>(state.range(0)));
  MorseOptions opt;
  std::size_t points = 0;
  for (auto _ : state) points = morse_sample(A, opt).points.size();
  state.counters["regions"] = static_cast<double>(points);
}

void BM_LpResonance(benchmark::State& state) {
  const Arrangement A = resonance_arrangement(static_cast<std::size_t>(state.range(0)));
  std::size_t points = 0;
  for (auto _ : state) points = lp_enumerate_regions(A).points.size();
  state.counters["regions"] = static_cast<double>(points);
}

void BM_MorseRandom(benchmark::State& state) {
  const Arrangement A = random_essential_arrangement(3, static_cast<std::size_t>(state.range(0)), 29);
  std::size_t points = 0;
  for (auto _ : state) points = morse_sample(A).points.size();
  state.counters["regions"] = static_cast<double>(points);
}

void BM_LpRandom(benchmark::State& state) {
  const Arrangement A = random_essential_arrangement(3, static_cast<std::size_t>(state.range(0)), 29);
  std::size_t points = 0;
  for (auto _ : state) points = lp_enumerate_regions(A).points.size();
  state.counters["regions"] = static_cast<double>(points);
}

}  // namespace

BENCHMARK(BM_MorseResonance)->DenseRange(2, 4)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_LpResonance)->DenseRange(2, 4)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_MorseRandom)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_LpRandom)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
