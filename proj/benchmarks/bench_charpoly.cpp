#include <benchmark/benchmark.h>

#include "hyperarr/charpoly.hpp"
#include "hyperarr/sampler.hpp"

using namespace hyperarr;

namespace {

Arrangement instance(std::int64_t id) {
  if (id <= 5) return resonance_arrangement(static_cast<std::size_t>(id));
  return random_essential_arrangement(3, static_cast<std::size_t>(id), 17);
}

void BM_CharPolyMobius(benchmark::State& state) {
  const Arrangement A = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(char_poly_mobius(A));
  state.counters["k"] = static_cast<double>(A.size());
}

void BM_CharPolyFiniteField(benchmark::State& state) {
  const Arrangement A = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(char_poly_finite_field(A));
  state.counters["k"] = static_cast<double>(A.size());
}

void BM_CharPolyWhitney(benchmark::State& state) {
  const Arrangement A = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(char_poly_whitney(A));
  state.counters["k"] = static_cast<double>(A.size());
}

}  // namespace

// ids 2..5 are resonance arrangements, larger ids are random with that many hyperplanes in R^3
BENCHMARK(BM_CharPolyMobius)->Arg(3)->Arg(4)->Arg(5)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharPolyFiniteField)->Arg(3)->Arg(4)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharPolyWhitney)->Arg(3)->Arg(4)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);
