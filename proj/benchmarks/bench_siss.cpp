#include <benchmark/benchmark.h>

#include <numbers>

#include "siss/constants.hpp"
#include "siss/extremal.hpp"
#include "siss/generators.hpp"
#include "siss/periodization.hpp"
#include "siss/siss_functions.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_BracketRawSpline(benchmark::State& state) {
  const siss::Generator g = siss::bspline(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(siss::bracket(g, 1, 0.3 * kPi).value);
}
BENCHMARK(BM_BracketRawSpline)->Arg(2)->Arg(4)->Arg(8);

void BM_BracketOrthonormalSpline(benchmark::State& state) {
  const siss::Generator g = siss::orthonormalize(siss::bspline(4));
  for (auto _ : state) benchmark::DoNotOptimize(siss::bracket(g, 1, 0.3 * kPi).value);
}
BENCHMARK(BM_BracketOrthonormalSpline);

void BM_BracketIncommensurate(benchmark::State& state) {
  const siss::Generator g = siss::bspline(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(siss::bracket(g, 1, 0.4, siss::Lattice{0.7}).value);
  }
}
BENCHMARK(BM_BracketIncommensurate);

void BM_ConstantOrthonormalSpline(benchmark::State& state) {
  const siss::Generator g = siss::orthonormalize(siss::bspline(4));
  for (auto _ : state) benchmark::DoNotOptimize(siss::bernstein_constant(g, 1).value);
}
BENCHMARK(BM_ConstantOrthonormalSpline)->Unit(benchmark::kMillisecond);

void BM_ConstantGaussian(benchmark::State& state) {
  const siss::Generator g = siss::orthonormalize(siss::gaussian(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(siss::bernstein_constant(g, 2).value);
}
BENCHMARK(BM_ConstantGaussian)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const siss::Generator g = siss::orthonormalize(siss::bspline(2));
  const int trials = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(siss::verify_inequality(g, 1, siss::Lattice{}, trials, 8, 42).max_ratio);
  }
}
BENCHMARK(BM_Verify)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ExtremalRatio(benchmark::State& state) {
  const siss::Generator g = siss::orthonormalize(siss::bspline(2));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(siss::extremal_ratio(g, 1, siss::Lattice{}, n, kPi));
  }
}
BENCHMARK(BM_ExtremalRatio)->Arg(64)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
