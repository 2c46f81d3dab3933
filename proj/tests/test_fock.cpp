#include <doctest.h>

#include <cmath>

#include "zflab/fock.hpp"

using namespace zf;

namespace {

RapidityGrid small_grid() { return RapidityGrid{-3.0, 3.0, 12, 1.0}; }

std::vector<cplx> rand_fn(const FockSpace& space, Rng& rng) {
  std::vector<cplx> f(space.gsize());
  for (auto& v : f) v = cplx{rng.normal(), rng.normal()};
  return f;
}

}  // namespace

TEST_CASE("projector: identity on one variable, orthogonal projector in general") {
  for (const char* name : {"free", "ising", "exponential"}) {
    const auto S = std::string(name) == "exponential"
                       ? builtin_scattering(name, {{"a", 0.7}})
                       : builtin_scattering(name);
    FockSpace space(S, small_grid(), 3);
    Rng rng = Rng::seeded(3);

    std::vector<cplx> one(space.gsize());
    for (auto& v : one) v = cplx{rng.normal(), rng.normal()};
    CHECK(space.project_s_symmetric(1, one) == one);

    // idempotent
    std::vector<cplx> arr(space.sector_size(2));
    for (auto& v : arr) v = cplx{rng.normal(), rng.normal()};
    const auto p1 = space.project_s_symmetric(2, arr);
    const auto p2 = space.project_s_symmetric(2, p1);
    double worst = 0.0;
    for (size_t i = 0; i < arr.size(); ++i) worst = std::max(worst, std::abs(p1[i] - p2[i]));
    CHECK(worst <= 1e-12);

    // self-adjoint under the weighted inner product
    FockVector a = FockVector::vacuum(space.gsize(), 2);
    FockVector b = FockVector::vacuum(space.gsize(), 2);
    for (auto& v : a.sector(2)) v = cplx{rng.normal(), rng.normal()};
    for (auto& v : b.sector(2)) v = cplx{rng.normal(), rng.normal()};
    FockVector pa = a, pb = b;
    pa.sector(2) = space.project_s_symmetric(2, a.sector(2));
    pb.sector(2) = space.project_s_symmetric(2, b.sector(2));
    CHECK(std::abs(space.inner(pa, b) - space.inner(a, pb)) <=
          1e-12 * std::max(1.0, std::abs(space.inner(pa, b))));
  }
}

TEST_CASE("free symmetrization kills antisymmetric input; ising two-term formula") {
  FockSpace free_space(builtin_scattering("free"), small_grid(), 2);
  Rng rng = Rng::seeded(5);
  const int G = free_space.gsize();

  std::vector<cplx> g(G), h(G);
  for (int p = 0; p < G; ++p) {
    g[p] = cplx{rng.normal(), rng.normal()};
    h[p] = cplx{rng.normal(), rng.normal()};
  }
  std::vector<cplx> anti(free_space.sector_size(2));
  for (int p = 0; p < G; ++p)
    for (int q = 0; q < G; ++q) anti[p * G + q] = g[p] * h[q] - g[q] * h[p];
  const auto projected = free_space.project_s_symmetric(2, anti);
  double worst = 0.0;
  for (const auto& v : projected) worst = std::max(worst, std::abs(v));
  CHECK(worst <= 1e-13);

  FockSpace ising_space(builtin_scattering("ising"), small_grid(), 2);
  std::vector<cplx> prod(ising_space.sector_size(2));
  for (int p = 0; p < G; ++p)
    for (int q = 0; q < G; ++q) prod[p * G + q] = g[p] * h[q];
  const auto pr = ising_space.project_s_symmetric(2, prod);
  worst = 0.0;
  for (int p = 0; p < G; ++p)
    for (int q = 0; q < G; ++q) {
      const cplx expected = 0.5 * (g[p] * h[q] - g[q] * h[p]);
      worst = std::max(worst, std::abs(pr[p * G + q] - expected));
    }
  CHECK(worst <= 1e-13);
}

TEST_CASE("creation/annihilation basics") {
  const auto S = builtin_scattering("exponential", {{"a", 0.7}});
  FockSpace space(S, small_grid(), 3);
  Rng rng = Rng::seeded(7);
  const auto f = rand_fn(space, rng);
  const auto g = rand_fn(space, rng);
  const FockVector omega = FockVector::vacuum(space.gsize(), 3);

  // z(f) Omega = 0
  const FockVector zo = space.annihilate(f, omega);
  CHECK(space.norm(zo) == 0.0);

  // z(f) z^dag(g) Omega = <conj f, g> Omega (grid inner product)
  const FockVector v = space.annihilate(f, space.create(g, omega));
  cplx ip{0.0, 0.0};
  for (int p = 0; p < space.gsize(); ++p) ip += f[p] * g[p];
  ip *= space.delta();
  CHECK(std::abs(v.sector(0)[0] - ip) <= 1e-13 * std::max(1.0, std::abs(ip)));

  // <z^dag(f) Omega, z^dag(g) Omega> = <f, g>
  const cplx lhs = space.inner(space.create(f, omega), space.create(g, omega));
  cplx fg{0.0, 0.0};
  for (int p = 0; p < space.gsize(); ++p) fg += std::conj(f[p]) * g[p];
  fg *= space.delta();
  CHECK(std::abs(lhs - fg) <= 1e-13 * std::max(1.0, std::abs(fg)));

  // adjoint relation on random vectors: <z^dag(conj f) Psi, Phi> = <Psi, z(f) Phi>
  const FockVector psi = space.random_vector(rng, 2);
  const FockVector phi = space.random_vector(rng);
  std::vector<cplx> fbar(f.size());
  for (size_t i = 0; i < f.size(); ++i) fbar[i] = std::conj(f[i]);
  const cplx a = space.inner(space.create(fbar, psi), phi);
  const cplx b = space.inner(psi, space.annihilate(f, phi));
  CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));

  // truncation is flagged when the top sector is populated
  FockVector top = FockVector::vacuum(space.gsize(), 1);
  top.sector(1)[3] = 1.0;
  const FockVector capped = space.create(f, top);
  CHECK(capped.truncated);
}

TEST_CASE("smeared ZF relations for all built-in scattering functions") {
  for (const char* name : {"free", "ising", "exponential"}) {
    const auto S = std::string(name) == "exponential"
                       ? builtin_scattering(name, {{"a", 0.7}})
                       : builtin_scattering(name);
    FockSpace space(S, small_grid(), 3);
    const auto rep = check_zf_relations(space, 4, 42, 1e-10);
    for (const auto& c : rep.checks) {
      INFO(c.name, " on ", name, " residual ", c.max_residual);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("Poincare action: identity, unitary translations, involutive J") {
  const auto S = builtin_scattering("ising");
  FockSpace space(S, small_grid(), 3);
  Rng rng = Rng::seeded(11);
  const FockVector v = space.random_vector(rng);

  const FockVector id = space.apply_poincare({0.0, 0.0}, 0.0, v);
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n)
    for (size_t i = 0; i < v.sector(n).size(); ++i)
      worst = std::max(worst, std::abs(id.sector(n)[i] - v.sector(n)[i]));
  CHECK(worst == 0.0);

  const FockVector tr = space.apply_poincare({0.7, -0.3}, 0.0, v);
  CHECK(std::abs(space.norm(tr) - space.norm(v)) <= 1e-12 * space.norm(v));

  const FockVector jj = space.apply_reflection(space.apply_reflection(v));
  worst = 0.0;
  for (int n = 0; n <= 3; ++n)
    for (size_t i = 0; i < v.sector(n).size(); ++i)
      worst = std::max(worst, std::abs(jj.sector(n)[i] - v.sector(n)[i]));
  CHECK(worst == 0.0);

  // J is antiunitary: <J a, J b> = <b, a>
  const FockVector w = space.random_vector(rng);
  const cplx lhs = space.inner(space.apply_reflection(v), space.apply_reflection(w));
  const cplx rhs = space.inner(w, v);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));

  // off-grid boost is rejected with the constraint named
  CHECK_THROWS_AS(space.apply_poincare({0.0, 0.0}, 0.37 * space.delta(), v),
                  PreconditionError);
  // grid-aligned boost is accepted
  CHECK_NOTHROW(space.apply_poincare({0.0, 0.0}, 2.0 * space.delta(), v));

  // U(x) commutes with the energy damping (diagonal phases vs diagonal positives)
  OmegaFn om = [](double p) { return 0.5 * std::log(1.0 + p); };
  const FockVector a = space.apply_energy_damp(om, space.apply_poincare({0.3, 0.1}, 0.0, v));
  const FockVector b = space.apply_poincare({0.3, 0.1}, 0.0, space.apply_energy_damp(om, v));
  worst = 0.0;
  for (int n = 0; n <= 3; ++n)
    for (size_t i = 0; i < v.sector(n).size(); ++i)
      worst = std::max(worst, std::abs(a.sector(n)[i] - b.sector(n)[i]));
  CHECK(worst <= 1e-15);  // same diagonal factors, opposite multiplication order
}

TEST_CASE("field operators") {
  const auto S = builtin_scattering("free");
  FockSpace space(S, small_grid(), 3);
  Rng rng = Rng::seeded(13);
  const auto fp = rand_fn(space, rng), fm = rand_fn(space, rng);
  const auto gp = rand_fn(space, rng), gm = rand_fn(space, rng);
  const FockVector omega = FockVector::vacuum(space.gsize(), 3);

  // phi(f) Omega has only the one-particle component f+
  const GridOperator phi_f = space.field(fp, fm);
  const FockVector fo = phi_f.apply(omega);
  double worst = 0.0;
  for (int p = 0; p < space.gsize(); ++p)
    worst = std::max(worst, std::abs(fo.sector(1)[p] - fp[p]));
  CHECK(worst <= 1e-14);
  CHECK(std::abs(fo.sector(0)[0]) == 0.0);

  // <Omega, phi(f) phi(g) Omega> = <conj f-, g+>
  const GridOperator phi_g = space.field(gp, gm);
  const FockVector fg = phi_f.apply(phi_g.apply(omega));
  cplx expect{0.0, 0.0};
  for (int p = 0; p < space.gsize(); ++p) expect += fm[p] * gp[p];
  expect *= space.delta();
  CHECK(std::abs(fg.sector(0)[0] - expect) <= 1e-13 * std::max(1.0, std::abs(expect)));

  // free-field commutator applied to the vacuum
  const FockVector gf = phi_g.apply(phi_f.apply(omega));
  cplx expect2{0.0, 0.0};
  for (int p = 0; p < space.gsize(); ++p) expect2 += gm[p] * fp[p];
  expect2 *= space.delta();
  const cplx comm = fg.sector(0)[0] - gf.sector(0)[0];
  CHECK(std::abs(comm - (expect - expect2)) <= 1e-12 * std::max(1.0, std::abs(comm)));
}

TEST_CASE("B operator: vacuum value and commutation relations") {
  for (const char* name : {"ising", "exponential"}) {
    const auto S = std::string(name) == "exponential"
                       ? builtin_scattering(name, {{"a", 0.7}})
                       : builtin_scattering(name);
    FockSpace space(S, small_grid(), 3);
    Rng rng = Rng::seeded(17);
    const auto g = rand_fn(space, rng);

    // B^{g,theta} Omega = g(theta) Omega
    FockVector omega = FockVector::vacuum(space.gsize(), 3);
    const FockVector bo = space.apply_b_operator(g, 4, omega);
    CHECK(std::abs(bo.sector(0)[0] - g[4]) <= 1e-15);

    const auto rep = check_primed_commutators(space, 4, 99, 1e-10);
    for (const auto& c : rep.checks) {
      INFO(c.name, " on ", name, " residual ", c.max_residual);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("qform norms") {
  const auto S = builtin_scattering("ising");
  FockSpace space(S, small_grid(), 3);
  OmegaFn zero = [](double) { return 0.0; };

  GridOperator ident;
  ident.apply = [](const FockVector& v) { return v; };
  ident.apply_adjoint = [](const FockVector& v) { return v; };
  CHECK(qform_norm(space, ident, 2, zero) == doctest::Approx(1.0).epsilon(1e-10));

  Rng rng = Rng::seeded(23);
  const auto f = rand_fn(space, rng);
  const auto rep = check_zdag_norm_bound(space, zero, f, 2);
  for (const auto& c : rep.checks) {
    INFO(c.name, " lhs ", c.values.at("lhs"), " rhs ", c.values.at("rhs"));
    CHECK(c.passed);
  }

  // with a nontrivial indicatrix the weighted bound still holds
  OmegaFn om = [](double p) { return 0.4 * std::log(1.0 + p); };
  const auto rep2 = check_zdag_norm_bound(space, om, f, 2);
  for (const auto& c : rep2.checks) CHECK(c.passed);
}

TEST_CASE("grid-aligned boost preserves norms of interior-supported vectors") {
  const auto S = builtin_scattering("exponential", {{"a", 0.7}});
  FockSpace space(S, RapidityGrid{-3.0, 3.0, 16, 1.0}, 2);
  // populate only grid sites that stay in range under a 3-step shift
  FockVector v = FockVector::vacuum(space.gsize(), 2);
  v.sectors[0][0] = 0.0;
  Rng rng = Rng::seeded(29);
  for (int p = 4; p < 12; ++p) v.sector(1)[p] = cplx{rng.normal(), rng.normal()};
  for (int p = 4; p < 12; ++p)
    for (int q = 4; q < 12; ++q)
      v.sector(2)[p * space.gsize() + q] = cplx{rng.normal(), rng.normal()};
  v = space.project_s_symmetric(v);

  const double lambda = 3.0 * space.delta();
  const FockVector b = space.apply_poincare({0.4, -0.1}, lambda, v);
  CHECK(!b.truncated);
  CHECK(std::abs(space.norm(b) - space.norm(v)) <= 1e-12 * space.norm(v));

  // shifting beyond the populated band drops weight and flags it
  const FockVector far = space.apply_poincare({0.0, 0.0}, 8.0 * space.delta(), v);
  CHECK(far.truncated);
}

TEST_CASE("grid mismatch is a precondition error") {
  const auto S = builtin_scattering("free");
  FockSpace space(S, small_grid(), 2);
  const FockVector v = FockVector::vacuum(space.gsize(), 2);
  const std::vector<cplx> wrong(space.gsize() + 3, cplx{1.0, 0.0});
  CHECK_THROWS_AS(space.create(wrong, v), PreconditionError);
  CHECK_THROWS_AS(space.annihilate(wrong, v), PreconditionError);
  CHECK_THROWS_AS(space.apply_b_operator(wrong, 0, v), PreconditionError);
}
