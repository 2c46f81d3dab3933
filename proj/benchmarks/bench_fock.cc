#include <benchmark/benchmark.h>

#include "zflab/fock.hpp"

using namespace zf;

namespace {

FockSpace make_space(int points, int nmax, const char* s = "exponential") {
  const auto S = std::string(s) == "exponential"
                     ? builtin_scattering(s, {{"a", 0.7}})
                     : builtin_scattering(s);
  return FockSpace(S, RapidityGrid{-3.0, 3.0, points, 1.0}, nmax);
}

}  // namespace

static void BM_ProjectSymmetric(benchmark::State& state) {
  const int G = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  FockSpace space = make_space(G, n);
  Rng rng = Rng::seeded(3);
  std::vector<cplx> arr(space.sector_size(n));
  for (auto& v : arr) v = cplx{rng.normal(), rng.normal()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(space.project_s_symmetric(n, arr));
  }
}
BENCHMARK(BM_ProjectSymmetric)->Args({16, 2})->Args({16, 3})->Args({32, 3})
    ->Unit(benchmark::kMicrosecond);

static void BM_CreateAnnihilate(benchmark::State& state) {
  FockSpace space = make_space(static_cast<int>(state.range(0)), 3);
  Rng rng = Rng::seeded(5);
  const FockVector v = space.random_vector(rng, 2);
  std::vector<cplx> f(space.gsize());
  for (auto& x : f) x = cplx{rng.normal(), rng.normal()};
  for (auto _ : state) {
    const FockVector up = space.create(f, v);
    benchmark::DoNotOptimize(space.annihilate(f, up));
  }
}
BENCHMARK(BM_CreateAnnihilate)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_ZfRelationCheck(benchmark::State& state) {
  FockSpace space = make_space(16, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_zf_relations(space, 1, 42, 1e-10));
  }
}
BENCHMARK(BM_ZfRelationCheck)->Unit(benchmark::kMillisecond);
