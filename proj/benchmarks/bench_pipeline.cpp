#include <benchmark/benchmark.h>

#include <random>

#include "harmvmd/baselines.hpp"
#include "harmvmd/fbd.hpp"
#include "harmvmd/hht.hpp"
#include "harmvmd/kselect.hpp"
#include "harmvmd/spectral.hpp"
#include "harmvmd/vmd.hpp"

using namespace harmvmd;

namespace {

SampledSignal eq14() {
  const auto p = preset("eq14");
  return synth_multitone(p.tones, p.sample_rate_hz, p.n_samples);
}

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

static void BM_DftForward(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft_forward(std::span<const double>(x)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftForward)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

static void BM_AnalyticSignal(benchmark::State& state) {
  const auto x = noise(4096);
  for (auto _ : state) benchmark::DoNotOptimize(analytic_signal(x));
}
BENCHMARK(BM_AnalyticSignal);

static void BM_BoxDimension(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fractal_box_dimension(x));
}
BENCHMARK(BM_BoxDimension)->Arg(4096)->Arg(16384);

static void BM_VmdEq14(benchmark::State& state) {
  const auto s = eq14();
  VmdParams p;
  p.k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vmd_decompose(s, p));
}
BENCHMARK(BM_VmdEq14)->DenseRange(1, 10, 3)->Unit(benchmark::kMillisecond);

static void BM_SelectKEq14(benchmark::State& state) {
  const auto s = eq14();
  KSelectConfig cfg;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(select_k(s, cfg));
}
BENCHMARK(BM_SelectKEq14)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_DetectEq14(benchmark::State& state) {
  const auto s = eq14();
  for (auto _ : state) benchmark::DoNotOptimize(detect_harmonics(s, {}));
}
BENCHMARK(BM_DetectEq14)->Unit(benchmark::kMillisecond);

static void BM_EmdEq14(benchmark::State& state) {
  const auto s = eq14();
  for (auto _ : state) benchmark::DoNotOptimize(emd(s));
}
BENCHMARK(BM_EmdEq14)->Unit(benchmark::kMillisecond);

static void BM_EemdEq14(benchmark::State& state) {
  const auto s = eq14();
  EmdConfig cfg;
  cfg.ensemble_size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eemd(s, cfg));
}
BENCHMARK(BM_EemdEq14)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
