// Timing for the hot kernels: matrix build, band reduction, Sturm bisection,
// plane-wave sectors. Run with --benchmark_filter to pick one.

#include <benchmark/benchmark.h>

#include "tunnelkit/eigen.hpp"
#include "tunnelkit/fock.hpp"
#include "tunnelkit/planewave.hpp"
#include "tunnelkit/shooting.hpp"

using namespace tunnelkit;

static void BM_FockBuild(benchmark::State& state) {
  PrecisionScope p(static_cast<int>(state.range(1)));
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_double_well(BigReal("0.01"), M));
}
BENCHMARK(BM_FockBuild)->Args({160, 40})->Args({320, 70})->Unit(benchmark::kMillisecond);

static void BM_GivensReduce(benchmark::State& state) {
  PrecisionScope p(static_cast<int>(state.range(1)));
  auto build = build_double_well(BigReal("0.01"), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(givens_tridiagonalize(build.matrix));
}
BENCHMARK(BM_GivensReduce)->Args({160, 40})->Args({320, 70})->Unit(benchmark::kMillisecond);

static void BM_SturmBisection(benchmark::State& state) {
  PrecisionScope p(static_cast<int>(state.range(1)));
  auto t = givens_tridiagonalize(build_double_well(BigReal("0.01"), static_cast<int>(state.range(0))).matrix);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_bisection(t, 0, 1, default_tolerance(t)));
}
BENCHMARK(BM_SturmBisection)->Args({160, 40})->Args({320, 70})->Unit(benchmark::kMillisecond);

static void BM_BandProfile(benchmark::State& state) {
  PrecisionScope p(30);
  const BigReal g("0.016");
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(band_profile(K, g, default_plane_wave_cutoff(g)));
}
BENCHMARK(BM_BandProfile)->Arg(8)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ShootOne(benchmark::State& state) {
  PrecisionScope p(30);
  auto quartic = PotentialSpec::anharmonic(BigReal(1), BigReal(1), BigReal(0));
  const BigReal h("0.01");
  for (auto _ : state) benchmark::DoNotOptimize(m_function(quartic, BigReal("0.62"), Parity::Even, h));
}
BENCHMARK(BM_ShootOne)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
