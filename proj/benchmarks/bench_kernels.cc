#include <benchmark/benchmark.h>

#include "zflab/analysis.hpp"
#include "zflab/araki.hpp"

using namespace zf;

namespace {

KernelFn bench_kernel(int m, int n) {
  return [m, n](std::span<const cplx> th, std::span<const cplx> et) {
    cplx v{1.0, 0.0};
    for (int i = 0; i < m; ++i) v *= std::exp(-0.5 * th[i] * th[i]);
    for (int j = 0; j < n; ++j) v *= std::exp(-0.5 * et[j] * et[j]);
    return v;
  };
}

}  // namespace

static void BM_ContractedCoefficients(benchmark::State& state) {
  const int mn = static_cast<int>(state.range(0));
  const auto S = builtin_scattering("exponential", {{"a", 0.7}});
  const auto A = OperatorExpansion::monomial(1, 1, bench_kernel(1, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(contracted_coefficients(S, A, mn, mn));
  }
}
BENCHMARK(BM_ContractedCoefficients)->Arg(1)->Arg(2)->Arg(3);

static void BM_WeakSmear(benchmark::State& state) {
  const int mn = static_cast<int>(state.range(0));
  const RapidityGrid grid{-3.0, 3.0, 12, 1.0};
  const auto S = builtin_scattering("ising");
  const auto A = OperatorExpansion::monomial(1, 1, bench_kernel(1, 1));
  const DeltaKernel K = contracted_coefficients(S, A, mn, mn);
  const SmearBattery battery = SmearBattery::make(grid, mn, mn, 1, 1);
  std::span<const std::vector<cplx>> fns(battery.functions[0]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        smear(K, grid, fns.subspan(0, mn), fns.subspan(mn, mn)));
  }
}
BENCHMARK(BM_WeakSmear)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

static void BM_CrossNormEstimate(benchmark::State& state) {
  const int G = static_cast<int>(state.range(0));
  const RapidityGrid grid{-3.0, 3.0, G, 1.0};
  const Indicatrix zero = builtin_indicatrix("zero");
  const KernelFn f = bench_kernel(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_norm_estimate(f, 1, 1, grid, zero));
  }
}
BENCHMARK(BM_CrossNormEstimate)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);
