#include <benchmark/benchmark.h>

#include "pinkforge/modforms.hpp"

namespace {

using namespace pinkforge;

FpSeries random_series(unsigned p, std::size_t deg, std::uint64_t seed, unsigned sparsity) {
  Rng rng(seed);
  FpSeries f(p, deg);
  for (std::size_t n = 0; n <= deg; ++n)
    if (rng() % sparsity == 0) f.set(n, unsigned(1 + rng() % (p - 1)));
  return f;
}

void BM_MulDenseGf2(benchmark::State& state) {
  const auto deg = std::size_t(state.range(0));
  FpSeries a = random_series(2, deg, 1, 1), b = random_series(2, deg, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(series_mul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulDenseGf2)->RangeMultiplier(4)->Range(1 << 12, 1 << 20)->Complexity();

void BM_MulSparseGf2(benchmark::State& state) {
  const auto deg = std::size_t(state.range(0));
  FpSeries a = delta_expansion(2, deg), b = random_series(2, deg, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(series_mul(a, b));
}
BENCHMARK(BM_MulSparseGf2)->RangeMultiplier(4)->Range(1 << 12, 1 << 20);

void BM_MulOdd(benchmark::State& state) {
  const auto deg = std::size_t(state.range(0));
  FpSeries a = random_series(3, deg, 4, 1), b = random_series(3, deg, 5, 16);
  for (auto _ : state) benchmark::DoNotOptimize(series_mul(a, b));
}
BENCHMARK(BM_MulOdd)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_DeltaExpansion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(delta_expansion(unsigned(state.range(0)), std::size_t(state.range(1))));
}
BENCHMARK(BM_DeltaExpansion)->Args({2, 1 << 20})->Args({2, 2'000'000})->Args({3, 1 << 14});

void BM_DeltaPowerDensity(benchmark::State& state) {
  const std::size_t x = std::size_t(state.range(1));
  FpSeries d = delta_expansion(2, x);
  for (auto _ : state) {
    FpSeries f = series_pow(d, std::uint64_t(state.range(0)));
    benchmark::DoNotOptimize(density_sweep(f, x, 2));
  }
}
BENCHMARK(BM_DeltaPowerDensity)->Args({3, 1 << 20})->Args({11, 1 << 20})->Unit(benchmark::kMillisecond);

}  // namespace
