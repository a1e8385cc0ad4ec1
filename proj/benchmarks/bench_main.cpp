#include "inertia/bounds.hpp"
#include "inertia/channels.hpp"
#include "inertia/conjecture.hpp"
#include "inertia/hadamard.hpp"
#include "inertia/pic.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace inertia;

Matrix random_joint(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Matrix p(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) p(i, j) = u(rng);
  }
  return p / p.sum();
}

void BM_Wht(benchmark::State& state) {
  const auto size = static_cast<Eigen::Index>(state.range(0));
  Vector v = Vector::LinSpaced(size, -1.0, 1.0);
  for (auto _ : state) {
    wht_inplace(std::span<double>(v.data(), static_cast<std::size_t>(size)));
    benchmark::DoNotOptimize(v.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Wht)->RangeMultiplier(4)->Range(4, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_Decompose(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto j = validate_joint(random_joint(size, size, 7));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(j));
}
BENCHMARK(BM_Decompose)->RangeMultiplier(2)->Range(2, 128);

void BM_FlattenMemorylessBsc(benchmark::State& state) {
  const auto j = memoryless_bsc(static_cast<int>(state.range(0)), 0.2).uniform_joint();
  for (auto _ : state) benchmark::DoNotOptimize(flatten_pics(j));
}
BENCHMARK(BM_FlattenMemorylessBsc)->DenseRange(1, 6);

void BM_ZExtremes(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto j = validate_joint(random_joint(size, size, 11));
  for (auto _ : state) benchmark::DoNotOptimize(z_extremes(j, 0.4, 0.6));
}
BENCHMARK(BM_ZExtremes)->DenseRange(2, 10, 2);

void BM_Scan(benchmark::State& state) {
  ScanOptions options;
  options.keep_records = false;
  for (auto _ : state) benchmark::DoNotOptimize(scan(static_cast<int>(state.range(0)), 0.25, options));
}
BENCHMARK(BM_Scan)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
