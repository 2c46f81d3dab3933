#include <benchmark/benchmark.h>

#include "zflab/formfactors.hpp"
#include "zflab/rng.hpp"

using namespace zf;

static void BM_TmPfaffian(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng = Rng::seeded(1);
  std::vector<double> theta(m);
  for (auto& t : theta) t = rng.uniform(-3.0, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_m(std::span<const double>(theta)));
    theta[0] += 1e-9;  // defeat value caching
  }
}
BENCHMARK(BM_TmPfaffian)->Arg(5)->Arg(7)->Arg(9)->Arg(11);

static void BM_TmPairingEnumeration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng = Rng::seeded(1);
  std::vector<cplx> zeta(m);
  for (auto& z : zeta) z = cplx{rng.uniform(-3.0, 3.0), 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(t_m_by_pairings(zeta));
    zeta[0] += 1e-9;
  }
}
BENCHMARK(BM_TmPairingEnumeration)->Arg(5)->Arg(7);

static void BM_TmBoundSampler(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto res = sample_tm_bound(m, 1000, 42);
    benchmark::DoNotOptimize(res.max_abs);
  }
}
BENCHMARK(BM_TmBoundSampler)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_ResidueExtraction(benchmark::State& state) {
  std::vector<cplx> base{cplx{0.3, 0.0}, cplx{-0.4, 0.3}, cplx{0.1, 0.6},
                         cplx{0.7, 0.9}};
  MultiFn F = [](std::span<const cplx> z) { return t_m(z); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(residue_on_hyperplane(F, 0, 3, base));
  }
}
BENCHMARK(BM_ResidueExtraction)->Unit(benchmark::kMicrosecond);
