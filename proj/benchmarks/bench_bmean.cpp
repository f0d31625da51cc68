#include <benchmark/benchmark.h>

#include "bmean/bmean.hpp"

namespace {

using namespace bmean;

void BM_EvalDual(benchmark::State& state) {
  const Expr e = parse("sin(x)^2*exp(-x/3) + atan(1 + x^3)/sqrt(2 + x^2)");
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_dual(e, x));
    x = x < 1.0 ? x + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_EvalDual);

void BM_Bajraktarevic(benchmark::State& state) {
  const GeneratorPair p = GeneratorPair::from_strings("sinh(x)", "cosh(x)", -2, 2);
  const RatioRange range = ratio_range(p);
  for (auto _ : state) benchmark::DoNotOptimize(bajraktarevic(p, range, -0.7, 1.3));
}
BENCHMARK(BM_Bajraktarevic);

void BM_MeansEqualOnGrid(benchmark::State& state) {
  const GeneratorPair a = GeneratorPair::from_strings("sin(x)", "cos(x)", -1.3, 1.3);
  const GeneratorPair b = GeneratorPair::from_strings("sinh(x)", "cosh(x)", -1.3, 1.3);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(means_equal_on_grid(a, b, grid));
}
BENCHMARK(BM_MeansEqualOnGrid)->Arg(11)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_CanonicalW(benchmark::State& state) {
  const GeneratorPair p = GeneratorPair::from_strings("x^2", "x", 0.5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_w(p));
}
BENCHMARK(BM_CanonicalW)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const GeneratorPair a = GeneratorPair::from_strings("sin(x)", "cos(x)", -1.3, 1.3);
  const GeneratorPair b = GeneratorPair::from_strings("sinh(x)", "cosh(x)", -1.3, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(classify_equality(a, b));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
