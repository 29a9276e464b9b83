#include <benchmark/benchmark.h>

#include "dwork/charsums.hpp"
#include "dwork/counting.hpp"
#include "dwork/formulas.hpp"
#include "dwork/orbits.hpp"

using namespace dwork;

namespace {

void BM_CountDwork(benchmark::State& state, Kernel kernel) {
  const FieldCtx F = FieldCtx::build(static_cast<std::uint32_t>(state.range(0)));
  const unsigned n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_dwork(F, n, 2, {1, kernel}).affine);
  state.SetLabel("q=" + std::to_string(F.q()) + " n=" + std::to_string(n));
}
BENCHMARK_CAPTURE(BM_CountDwork, naive, Kernel::naive)->Args({11, 5})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CountDwork, fibered, Kernel::fibered)->Args({11, 5})->Args({31, 5})->Args({29, 7})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CountDwork, recursive, Kernel::recursive)->Args({11, 5})->Args({31, 5})->Args({29, 7})->Unit(benchmark::kMillisecond);

void BM_CountExtension(benchmark::State& state) {
  const FieldCtx F = FieldCtx::build(11);
  const unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_dwork_over(F, 2, 5, 2, {threads, Kernel::fibered}).affine);
}
BENCHMARK(BM_CountExtension)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GaussTable(benchmark::State& state) {
  const FieldCtx F = FieldCtx::build(static_cast<std::uint32_t>(state.range(0)), static_cast<unsigned>(state.range(1)));
  for (auto _ : state) {
    const CharTable t(F);
    benchmark::DoNotOptimize(t.gauss(t.character(1)).re());
  }
  state.SetLabel("q=" + std::to_string(F.q()));
}
BENCHMARK(BM_GaussTable)->Args({29, 1})->Args({11, 2})->Args({211, 1})->Unit(benchmark::kMillisecond);

void BM_EnumerateClasses(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes(n).size());
}
BENCHMARK(BM_EnumerateClasses)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMicrosecond);

void BM_CountFormula(benchmark::State& state) {
  const CharTable t(FieldCtx::build(static_cast<std::uint32_t>(state.range(0))));
  const unsigned n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dwork_count_formula(t, n, 3).total);
}
BENCHMARK(BM_CountFormula)->Args({11, 5})->Args({29, 7})->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const CharTable t(FieldCtx::build(static_cast<std::uint32_t>(state.range(0))));
  const unsigned n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(t, n, 3).formula_total);
}
BENCHMARK(BM_Decompose)->Args({11, 5})->Args({29, 7})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
