#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ctensor/ctensor.hpp"

namespace {

using namespace ctensor;

CirculantTensor random_circulant(std::size_t order, std::size_t n) {
  std::mt19937_64 gen(order * 100 + n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> root(static_cast<std::size_t>(std::pow(n, order - 1)));
  for (auto& v : root) v = u(gen);
  return CirculantTensor(DenseTensor(order - 1, n, root));
}

std::vector<double> probe(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(static_cast<double>(i) + 0.3);
  return x;
}

void BM_FormCirculant(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_circulant(4, n);
  const auto x = probe(n);
  for (auto _ : state) benchmark::DoNotOptimize(apply_full(a, x));
}
BENCHMARK(BM_FormCirculant)->Arg(4)->Arg(8)->Arg(16);

void BM_FormDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_circulant(4, n).materialize();
  const auto x = probe(n);
  for (auto _ : state) benchmark::DoNotOptimize(apply_full(a, x));
}
BENCHMARK(BM_FormDense)->Arg(4)->Arg(8)->Arg(16);

void BM_NativeEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_circulant(4, n);
  for (auto _ : state) benchmark::DoNotOptimize(native_eigenvalues(a));
}
BENCHMARK(BM_NativeEigenvalues)->Arg(4)->Arg(8)->Arg(16);

void BM_AdmmExample5(benchmark::State& state) {
  const auto a = expand(DiagRootSpec{4, {-4.75046, 3.58365, 8.252}});
  AdmmParams p;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    p.seed = seed++;
    benchmark::DoNotOptimize(minimize(a, p));
  }
}
BENCHMARK(BM_AdmmExample5);

void BM_BruteForceQuartic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_circulant(4, n);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min(a));
}
BENCHMARK(BM_BruteForceQuartic)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
