#include <benchmark/benchmark.h>

#include <random>

#include "isoflow/flow.hpp"
#include "isoflow/greens.hpp"
#include "isoflow/integrate.hpp"
#include "isoflow/spectral.hpp"
#include "isoflow/stieltjes.hpp"

using namespace isoflow;

namespace {

DiscreteString make_string(int n) {
  std::mt19937 rng(42 + n);
  std::uniform_real_distribution<double> umass(0.2, 1.0);
  DiscreteString s;
  s.bc = {RobinCoeff::finite(1.0), RobinCoeff::finite(0.0)};
  for (int i = 1; i <= n; ++i) {
    s.x.push_back(static_cast<double>(i) / (n + 1));
    s.m.push_back(umass(rng));
  }
  return s;
}

void BM_VectorField(benchmark::State& state) {
  const auto s = make_string(static_cast<int>(state.range(0)));
  const FlowSpec spec{3, 0.0, KernelKind::string};
  for (auto _ : state) benchmark::DoNotOptimize(vector_field(s, spec));
}
BENCHMARK(BM_VectorField)->Arg(4)->Arg(8)->Arg(16);

void BM_RationalField(benchmark::State& state) {
  const auto s = make_string(static_cast<int>(state.range(0)));
  const FlowSpec spec{2, 0.05, KernelKind::string};
  for (auto _ : state) benchmark::DoNotOptimize(vector_field(s, spec));
}
BENCHMARK(BM_RationalField)->Arg(4)->Arg(8);

void BM_Spectrum(benchmark::State& state) {
  const auto s = make_string(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(s));
}
BENCHMARK(BM_Spectrum)->Arg(4)->Arg(8);

void BM_Invert(benchmark::State& state) {
  const auto s = make_string(static_cast<int>(state.range(0)));
  const auto sd = spectrum(s);
  for (auto _ : state) benchmark::DoNotOptimize(invert(sd, s.bc));
}
BENCHMARK(BM_Invert)->Arg(4)->Arg(6);

void BM_IntegrateFlow(benchmark::State& state) {
  const auto s = make_string(4);
  const FlowSpec spec{1, 0.0, KernelKind::string};
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_flow(s, spec, 0.05, StepPolicy::adaptive(1e-8)));
}
BENCHMARK(BM_IntegrateFlow);

}  // namespace

BENCHMARK_MAIN();
