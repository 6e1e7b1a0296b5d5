#include <benchmark/benchmark.h>

#include <cmath>

#include "skewtent/acim.hpp"
#include "skewtent/entropy.hpp"
#include "skewtent/flexibility.hpp"
#include "skewtent/maps.hpp"
#include "skewtent/ulam.hpp"

using namespace skewtent;

static void BM_itn_density(benchmark::State& state) {
  const SkewTentMap f = make_skew_tent(2.35051, 10.0 / 6.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(itn_density(f, 1e-10));
  }
}
BENCHMARK(BM_itn_density);

static void BM_itn_density_slow_slope(benchmark::State& state) {
  const SkewTentMap f = make_skew_tent(40.0, 1.02);
  for (auto _ : state) {
    benchmark::DoNotOptimize(itn_density(f, 1e-10));
  }
}
BENCHMARK(BM_itn_density_slow_slope);

static void BM_topological_entropy(benchmark::State& state) {
  const SkewTentMap f = make_skew_tent(1.7, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(topological_entropy(f));
  }
}
BENCHMARK(BM_topological_entropy);

static void BM_kneading_word(benchmark::State& state) {
  const SkewTentMap f = make_skew_tent(1.7, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kneading_word(f, 10000));
  }
}
BENCHMARK(BM_kneading_word);

static void BM_ulam_build(benchmark::State& state) {
  const SkewTentMap f = make_skew_tent(1.9, 1.4);
  const auto m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_matrix(f, m));
  }
}
BENCHMARK(BM_ulam_build)->Arg(1024)->Arg(4096);

static void BM_ulam_stationary(benchmark::State& state) {
  const SkewTentMap f = make_skew_tent(1.9, 1.4);
  const UlamMatrix mat = build_matrix(f, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stationary_density(mat));
  }
}
BENCHMARK(BM_ulam_stationary)->Arg(1024);

static void BM_rect_root(benchmark::State& state) {
  const SkewTentMap g = make_skew_tent(1.7, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rect_root(g));
  }
}
BENCHMARK(BM_rect_root);

static void BM_lap_count(benchmark::State& state) {
  const SkewTentMap f = make_skew_tent(1.5, 1.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lap_count(f, 14));
  }
}
BENCHMARK(BM_lap_count);

static void BM_isentrope(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(isentrope_s(0.6, 1.3));
  }
}
BENCHMARK(BM_isentrope)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
