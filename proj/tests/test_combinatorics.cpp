#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "zflab/combinatorics.hpp"
#include "zflab/rng.hpp"

using namespace zf;

namespace {

std::vector<cplx> random_rapidities(int n, Rng& rng, double im_span = 0.3) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx{rng.uniform(-2.0, 2.0), rng.uniform(-im_span, im_span)};
  return v;
}

}  // namespace

TEST_CASE("permutation basics") {
  const Permutation id = Permutation::identity(4);
  CHECK(id.sign() == 1);
  CHECK(id.inversions() == 0);

  const Permutation t = Permutation::transposition(4, 1, 3);
  CHECK(t.sign() == -1);
  CHECK(t.inverse() == t);

  Rng rng = Rng::seeded(7);
  for (int i = 0; i < 20; ++i) {
    const Permutation a = random_permutation(5, rng);
    const Permutation b = random_permutation(5, rng);
    CHECK(a.then_after(a.inverse()) == Permutation::identity(5));
    CHECK(a.then_after(b).sign() == a.sign() * b.sign());
  }
  CHECK(all_permutations(4).size() == 24);
}

TEST_CASE("s_sigma: identity, ising sign, explicit transposition value") {
  const auto ising = builtin_scattering("ising");
  const auto expo = builtin_scattering("exponential", {{"a", 0.7}});
  Rng rng = Rng::seeded(11);

  const auto theta = random_rapidities(5, rng, 0.0);
  CHECK(s_sigma(expo, Permutation::identity(5), theta) == cplx{1.0, 0.0});

  for (int i = 0; i < 10; ++i) {
    const Permutation sigma = random_permutation(5, rng);
    const cplx v = s_sigma(ising, sigma, theta);
    CHECK(std::abs(v - cplx{static_cast<double>(sigma.sign()), 0.0}) < 1e-15);
  }

  // swap of two entries: S^sigma = S(theta_2 - theta_1)
  const std::vector<cplx> th2{cplx{0.4, 0.0}, cplx{-0.1, 0.0}};
  const cplx v = s_sigma(expo, Permutation::transposition(2, 0, 1), th2);
  const cplx expected = std::exp(cplx{0.0, 0.7 * std::sinh(-0.5)});
  CHECK(std::abs(v - expected) < 1e-14);
}

TEST_CASE("composition law S^{sigma rho} = S^sigma(theta) S^rho(theta^sigma)") {
  const auto expo = builtin_scattering("exponential", {{"a", 0.7}});
  Rng rng = Rng::seeded(13);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + rng.index(5);
    const auto theta = random_rapidities(n, rng);
    const Permutation sigma = random_permutation(n, rng);
    const Permutation rho = random_permutation(n, rng);
    const cplx lhs = s_sigma(expo, sigma.then_after(rho), theta);
    const auto theta_sigma = sigma.permute(theta);
    const cplx rhs = s_sigma(expo, sigma, theta) * s_sigma(expo, rho, theta_sigma);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("sym_s: projector behavior") {
  const auto free_s = builtin_scattering("free");
  const auto ising = builtin_scattering("ising");
  Rng rng = Rng::seeded(17);

  // symmetric input is fixed (free case)
  auto symf = [](std::span<const cplx> t) { return t[0] * t[1] + t[1] * t[0]; };
  const std::vector<cplx> th{cplx{0.3, 0.0}, cplx{1.1, 0.0}};
  CHECK(std::abs(sym_s(free_s, symf, th) - symf(th)) < 1e-14);

  // ising two-point example: Sym(theta_1) = (theta_1 - theta_2)/2
  auto first = [](std::span<const cplx> t) { return t[0]; };
  const std::vector<cplx> point{cplx{2.0, 0.0}, cplx{5.0, 0.0}};
  CHECK(std::abs(sym_s(ising, first, point) - cplx{-1.5, 0.0}) < 1e-14);

  // idempotence at random points
  const auto expo = builtin_scattering("exponential", {{"a", 0.4}});
  auto g = [](std::span<const cplx> t) {
    return std::exp(t[0]) + 0.5 * t[1] * t[1] + t[2];
  };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto theta = random_rapidities(3, rng);
    auto once = [&](std::span<const cplx> t) { return sym_s(expo, g, t); };
    const cplx a = sym_s(expo, once, theta);
    const cplx b = sym_s(expo, g, theta);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("contraction enumeration counts match the closed formula") {
  CHECK(enumerate_contractions(0, 4).size() == 1);
  CHECK(enumerate_contractions(2, 1).size() == 3);
  CHECK(enumerate_contractions(3, 3).size() == 34);
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      const auto all = enumerate_contractions(m, n);
      CHECK(static_cast<long>(all.size()) == count_contractions(m, n));
      for (const auto& c : all) CHECK(c.is_canonical());
      // no duplicates
      for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) CHECK(!(all[i] == all[j]));
    }
}

TEST_CASE("S_C factorizes into S^sigma S^rho on the delta support") {
  const auto expo = builtin_scattering("exponential", {{"a", 0.7}});
  Rng rng = Rng::seeded(19);
  double worst = 0.0;
  for (const auto& C : enumerate_contractions(3, 2)) {
    for (int trial = 0; trial < 5; ++trial) {
      auto theta = random_rapidities(3, rng);
      auto eta = random_rapidities(2, rng);
      for (const auto& [l, r] : C.pairs) eta[r - C.m] = theta[l];
      const cplx sc = s_c(expo, C, theta, eta);
      const auto [sigma, rho] = contraction_permutations(C);
      const cplx srs = s_sigma(expo, sigma, theta) * s_sigma(expo, rho, eta);
      worst = std::max(worst, std::abs(sc - srs));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("R_C special values") {
  const auto free_s = builtin_scattering("free");
  const auto ising = builtin_scattering("ising");
  Rng rng = Rng::seeded(23);

  // empty contraction: S_C = R_C = 1
  Contraction empty;
  empty.m = 2;
  empty.n = 2;
  const auto theta = random_rapidities(2, rng);
  const auto eta = random_rapidities(2, rng);
  CHECK(s_c(free_s, empty, theta, eta) == cplx{1.0, 0.0});
  CHECK(r_c(free_s, empty, theta, eta, false) == cplx{1.0, 0.0});

  for (const auto& C : enumerate_contractions(2, 2)) {
    if (C.size() == 0) continue;
    auto th = random_rapidities(2, rng);
    auto et = random_rapidities(2, rng);
    for (const auto& [l, r] : C.pairs) et[r - C.m] = th[l];
    // free: R_C = 0 whenever |C| >= 1
    CHECK(std::abs(r_c(free_s, C, th, et)) < 1e-15);
    // ising with m+n even: R_C = 0
    CHECK(std::abs(r_c(ising, C, th, et)) < 1e-15);
  }

  // off-support R_C request is a precondition error
  const auto C1 = enumerate_contractions(1, 1)[1];
  CHECK(C1.size() == 1);
  std::vector<cplx> a{cplx{0.4, 0.0}}, b{cplx{1.7, 0.0}};
  CHECK_THROWS_AS(r_c(ising, C1, a, b), PreconditionError);
}

TEST_CASE("reflected contraction is an involution and composition works") {
  Rng rng = Rng::seeded(29);
  const auto all = enumerate_contractions(3, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& C = all[rng.index(static_cast<int>(all.size()))];
    CHECK(reflect_contraction(reflect_contraction(C)) == C);
  }
  Contraction none;
  for (const auto& C : enumerate_contractions(2, 2)) {
    none.m = C.m - C.size();
    none.n = C.n - C.size();
    none.pairs.clear();
    CHECK(compose_contractions(C, none) == C);
  }
}

TEST_CASE("composition identity delta_C delta_C' S_C S_C' = delta S at the join") {
  const auto expo = builtin_scattering("exponential", {{"a", 0.9}});
  Rng rng = Rng::seeded(31);
  double worst = 0.0;
  for (const auto& C : enumerate_contractions(3, 3)) {
    const int m2 = C.m - C.size(), n2 = C.n - C.size();
    for (const auto& C2 : enumerate_contractions(m2, n2)) {
      const Contraction join = compose_contractions(C, C2);
      auto theta = random_rapidities(3, rng);
      auto eta = random_rapidities(3, rng);
      // put the arguments on the joint delta support
      for (const auto& [l, r] : join.pairs) eta[r - join.m] = theta[l];
      const auto freeL = C.free_left();
      const auto freeR = C.free_right();
      std::vector<cplx> th(m2), eh(n2);
      for (int i = 0; i < m2; ++i) th[i] = theta[freeL[i]];
      for (int j = 0; j < n2; ++j) eh[j] = eta[freeR[j] - C.m];
      const cplx lhs = s_c(expo, C, theta, eta) * s_c(expo, C2, th, eh);
      const cplx rhs = s_c(expo, join, theta, eta);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("R_C reflection identity on the delta support") {
  const auto expo = builtin_scattering("exponential", {{"a", 0.7}});
  Rng rng = Rng::seeded(37);
  double worst = 0.0;
  for (const auto& C : enumerate_contractions(2, 3)) {
    const Contraction CJ = reflect_contraction(C);
    for (int trial = 0; trial < 4; ++trial) {
      auto u = random_rapidities(2, rng);
      auto v = random_rapidities(3, rng);
      for (const auto& [l, r] : C.pairs) v[r - C.m] = u[l];
      const cplx lhs = s_c(expo, C, u, v) * r_c(expo, C, u, v);
      const double sign = C.size() % 2 == 0 ? 1.0 : -1.0;
      const cplx rhs = sign * s_c(expo, CJ, v, u) * r_c(expo, CJ, v, u);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("pairing enumeration and signs") {
  CHECK(enumerate_pairings(0).size() == 1);
  CHECK(enumerate_pairings(2).size() == 1);
  CHECK(enumerate_pairings(2)[0].sign() == 1);
  CHECK(enumerate_pairings(3).size() == 3);
  CHECK(enumerate_pairings(5).size() == 15);
  for (int m = 0; m <= 7; ++m)
    CHECK(static_cast<long>(enumerate_pairings(m).size()) == count_pairings(m));

  // sign is invariant under reordering the stored pairs
  Rng rng = Rng::seeded(41);
  for (const auto& P : enumerate_pairings(6)) {
    Pairing q = P;
    for (int i = static_cast<int>(q.pairs.size()) - 1; i > 0; --i)
      std::swap(q.pairs[i], q.pairs[rng.index(i + 1)]);
    CHECK(q.sign() == P.sign());
  }
}

TEST_CASE("bundled contraction factors") {
  const auto expo = builtin_scattering("exponential", {{"a", 0.7}});
  Rng rng = Rng::seeded(43);
  for (const auto& C : enumerate_contractions(2, 2)) {
    auto th = random_rapidities(2, rng);
    auto et = random_rapidities(2, rng);
    for (const auto& [l, r] : C.pairs) et[r - C.m] = th[l];
    const auto f = contraction_factors(expo, C, th, et);
    CHECK(std::abs(f.s_c - s_c(expo, C, th, et)) == 0.0);
    CHECK(std::abs(f.s_c - s_sigma(expo, f.sigma, th) * s_sigma(expo, f.rho, et)) <=
          1e-12);
    if (C.size() > 0) {
      auto bad = et;
      bad[C.pairs[0].second - C.m] += 1.0;
      CHECK_THROWS_AS(contraction_factors(expo, C, th, bad), PreconditionError);
      CHECK_NOTHROW(contraction_factors(expo, C, th, bad, /*want_rc=*/false));
    }
  }
}
