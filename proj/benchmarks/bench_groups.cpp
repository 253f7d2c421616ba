#include <benchmark/benchmark.h>

#include "pinkforge/pinklie.hpp"

namespace {

using namespace pinkforge;

GmaPtr matrix_algebra(unsigned p, unsigned k) {
  return GmaStructure::matrix_algebra(std::make_shared<const Ring>(make_truncated_poly_ring(p, k)));
}

void BM_GmaMul(benchmark::State& state) {
  GmaPtr r = matrix_algebra(3, unsigned(state.range(0)));
  Rng rng(1);
  GmaElem x = r->random(rng), y = r->random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(r->mul(x, y));
}
BENCHMARK(BM_GmaMul)->DenseRange(2, 6, 2);

void BM_GenerateSection8(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(example_section8(3, unsigned(state.range(0))));
}
BENCHMARK(BM_GenerateSection8)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_IdealMatrixConverse(benchmark::State& state) {
  GmaPtr r = matrix_algebra(3, unsigned(state.range(0)));
  Subspace l = congruence_lie(*r, r->ring().radical());
  for (auto _ : state) benchmark::DoNotOptimize(pink_converse(r, l));
}
BENCHMARK(BM_IdealMatrixConverse)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_FormulaBattery(benchmark::State& state) {
  GmaPtr r = matrix_algebra(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(formula_battery(*r, std::size_t(state.range(0)), 7));
}
BENCHMARK(BM_FormulaBattery)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_KeyMeasure(benchmark::State& state) {
  Section8 s = example_section8(3, unsigned(state.range(0)));
  auto ess = essential_data(s.group, descending_series(*s.algebra, s.lie, 2)[1]);
  for (auto _ : state) benchmark::DoNotOptimize(key_measure_check(s.group, ess, 2));
}
BENCHMARK(BM_KeyMeasure)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
