// Serial reference vs OpenMP versions of the three parallel kernels.

#include <benchmark/benchmark.h>

#include <numbers>

#include "semiradius/inequalities.hpp"
#include "semiradius/sharpness.hpp"

using namespace semiradius;

namespace {

Operator sample_operator(int n) {
  GenConfig cfg;
  cfg.seed = 99;
  cfg.dim = n;
  cfg.a_rank = n;
  return gen_operator(gen_space(cfg), cfg);
}

ScalarFn radius_integrand(const Operator& t) {
  const ComplexMatrix c = compression(t);
  const ComplexMatrix cs = compression(sharp(t));
  return [c, cs](double theta) {
    const Complex ph = std::polar(1.0, theta);
    return spectral_norm(0.5 * (ph * c + std::conj(ph) * cs));
  };
}

void BM_GridSerial(benchmark::State& state) {
  const ScalarFn f = radius_integrand(sample_operator(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid_serial(f, std::numbers::pi, 720));
}

void BM_GridParallel(benchmark::State& state) {
  const ScalarFn f = radius_integrand(sample_operator(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(f, std::numbers::pi, 720));
}

void BM_BruteForceSerial(benchmark::State& state) {
  const Operator t = sample_operator(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_radius_serial(t, 100000, 1));
}

void BM_BruteForceParallel(benchmark::State& state) {
  const Operator t = sample_operator(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_radius(t, 100000, 1));
}

void BM_RegistrySerial(benchmark::State& state) {
  const InstanceStream st{1, Profile::named("standard"), static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(run_registry_serial(st, {}, RunOptions{{}, false}));
}

void BM_RegistryParallel(benchmark::State& state) {
  const InstanceStream st{1, Profile::named("standard"), static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(run_registry(st, {}, RunOptions{{}, false}));
}

void BM_SharpnessSerial(benchmark::State& state) {
  SharpnessOptions o;
  o.budget = 100;
  for (auto _ : state) benchmark::DoNotOptimize(search_sharpness_serial("thm20005", o));
}

void BM_SharpnessParallel(benchmark::State& state) {
  SharpnessOptions o;
  o.budget = 100;
  for (auto _ : state) benchmark::DoNotOptimize(search_sharpness("thm20005", o));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(4)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GridParallel)->Arg(4)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BruteForceSerial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegistrySerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegistryParallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK(BM_SharpnessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SharpnessParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
