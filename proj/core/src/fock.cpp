#include "zflab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zf {

namespace {
constexpr int kMaxSector = 8;
}

FockVector FockVector::vacuum(int n_points, int n_max) {
  FockVector v;
  v.n_points = n_points;
  v.n_max = n_max;
  v.sectors.resize(n_max + 1);
  long size = 1;
  for (int n = 0; n <= n_max; ++n) {
    v.sectors[n].assign(size, cplx{0.0, 0.0});
    size *= n_points;
  }
  v.sectors[0][0] = 1.0;
  return v;
}

FockSpace::FockSpace(ScatteringFunction S, RapidityGrid grid, int n_max)
    : S_(std::move(S)), grid_(grid), n_max_(n_max) {
  if (n_max_ < 0 || n_max_ > kMaxSector)
    throw ConfigError("FockSpace: n_max out of supported range");
  if (grid_.n_points < 2) throw ConfigError("FockSpace: need at least 2 grid points");
  const int G = gsize();
  stab_.resize(static_cast<size_t>(G) * G);
  for (int p = 0; p < G; ++p)
    for (int q = 0; q < G; ++q)
      stab_[p * G + q] = S_(cplx{grid_.point(p) - grid_.point(q), 0.0});
  powG_.resize(kMaxSector + 2);
  powG_[0] = 1;
  for (int n = 1; n <= kMaxSector + 1; ++n) powG_[n] = powG_[n - 1] * G;
}

void FockSpace::decode(int n, long flat, int* digits) const {
  for (int k = n - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(flat % gsize());
    flat /= gsize();
  }
}

long FockSpace::encode(int n, const int* digits) const {
  long flat = 0;
  for (int k = 0; k < n; ++k) flat = flat * gsize() + digits[k];
  return flat;
}

double FockSpace::energy_sum(int n, long flat) const {
  int d[kMaxSector];
  decode(n, flat, d);
  double e = 0.0;
  for (int k = 0; k < n; ++k) e += std::cosh(grid_.point(d[k]));
  return e;
}

cplx FockSpace::inner(const FockVector& a, const FockVector& b) const {
  cplx sum{0.0, 0.0};
  double w = 1.0;
  const int top = std::min(a.n_max, b.n_max);
  for (int n = 0; n <= top; ++n) {
    cplx s{0.0, 0.0};
    for (size_t i = 0; i < a.sectors[n].size(); ++i)
      s += std::conj(a.sectors[n][i]) * b.sectors[n][i];
    sum += w * s;
    w *= delta();
  }
  return sum;
}

double FockSpace::norm(const FockVector& v) const {
  return std::sqrt(std::max(0.0, inner(v, v).real()));
}

std::vector<cplx> FockSpace::project_s_symmetric(int n, const std::vector<cplx>& in) const {
  if (n <= 1) return in;
  const auto perms = all_permutations(n);
  // inversion pair lists per permutation
  std::vector<std::vector<std::pair<int, int>>> invs(perms.size());
  for (size_t s = 0; s < perms.size(); ++s)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perms[s](i) > perms[s](j)) invs[s].push_back({perms[s](i), perms[s](j)});

  std::vector<cplx> out(in.size());
  int d[kMaxSector], y[kMaxSector];
  const double inv_fact = 1.0 / static_cast<double>(factorial(n));
  for (long x = 0; x < static_cast<long>(in.size()); ++x) {
    decode(n, x, d);
    cplx acc{0.0, 0.0};
    for (size_t s = 0; s < perms.size(); ++s) {
      cplx factor{1.0, 0.0};
      for (const auto& [a, b] : invs[s]) factor *= s_table(d[a], d[b]);
      for (int k = 0; k < n; ++k) y[k] = d[perms[s](k)];
      acc += factor * in[encode(n, y)];
    }
    out[x] = acc * inv_fact;
  }
  return out;
}

FockVector FockSpace::project_s_symmetric(const FockVector& v) const {
  FockVector out = v;
  for (int n = 2; n <= v.n_max; ++n) out.sectors[n] = project_s_symmetric(n, v.sectors[n]);
  return out;
}

FockVector FockSpace::random_vector(Rng& rng, int top_sector) const {
  FockVector v = FockVector::vacuum(gsize(), n_max_);
  const int top = top_sector < 0 ? n_max_ : std::min(top_sector, n_max_);
  v.sectors[0][0] = cplx{rng.normal(), rng.normal()};
  for (int n = 1; n <= top; ++n)
    for (auto& entry : v.sectors[n]) entry = cplx{rng.normal(), rng.normal()};
  return project_s_symmetric(v);
}

FockVector FockSpace::create(const std::vector<cplx>& f, const FockVector& v) const {
  if (static_cast<int>(f.size()) != gsize() || v.n_points != gsize())
    throw PreconditionError("create: grid mismatch");
  FockVector out = FockVector::vacuum(gsize(), v.n_max);
  out.sectors[0][0] = 0.0;
  out.truncated = v.truncated;
  for (int n = 1; n <= v.n_max; ++n) {
    const auto& prev = v.sectors[n - 1];
    std::vector<cplx> tensor(powG_[n]);
    const long block = powG_[n - 1];
    for (int p = 0; p < gsize(); ++p)
      for (long r = 0; r < block; ++r) tensor[p * block + r] = f[p] * prev[r];
    tensor = project_s_symmetric(n, tensor);
    const double scale = std::sqrt(static_cast<double>(n));
    auto& dst = out.sectors[n];
    for (long i = 0; i < powG_[n]; ++i) dst[i] = scale * tensor[i];
  }
  for (const auto& entry : v.sectors[v.n_max])
    if (std::abs(entry) > 0.0) {
      out.truncated = true;
      break;
    }
  return out;
}

FockVector FockSpace::annihilate(const std::vector<cplx>& f, const FockVector& v) const {
  if (static_cast<int>(f.size()) != gsize() || v.n_points != gsize())
    throw PreconditionError("annihilate: grid mismatch");
  FockVector out = FockVector::vacuum(gsize(), v.n_max);
  out.sectors[0][0] = 0.0;
  out.truncated = v.truncated;
  for (int n = 1; n <= v.n_max; ++n) {
    const auto& src = v.sectors[n];
    auto& dst = out.sectors[n - 1];
    const long block = powG_[n - 1];
    const double scale = std::sqrt(static_cast<double>(n)) * delta();
    for (long r = 0; r < block; ++r) {
      cplx acc{0.0, 0.0};
      for (int p = 0; p < gsize(); ++p) acc += f[p] * src[p * block + r];
      dst[r] = scale * acc;
    }
  }
  return out;
}

FockVector FockSpace::apply_zdagz(const std::vector<cplx>& K, int a, int b,
                                  const FockVector& v) const {
  return apply_zdagz_mid(K, a, b, MidFn{}, v);
}

FockVector FockSpace::apply_zdagz_mid(const std::vector<cplx>& K, int a, int b,
                                      const MidFn& mid, const FockVector& v) const {
  if (static_cast<long>(K.size()) != powG_[a + b])
    throw PreconditionError("apply_zdagz: kernel size mismatch");
  FockVector out = FockVector::vacuum(gsize(), v.n_max);
  out.sectors[0][0] = 0.0;
  out.truncated = v.truncated;
  int dth[kMaxSector], deta[kMaxSector], dv[kMaxSector];
  for (int k = b; k <= v.n_max; ++k) {
    const int kp = k - b + a;
    if (kp > v.n_max) {
      for (const auto& entry : v.sectors[k])
        if (std::abs(entry) > 0.0) {
          out.truncated = true;
          break;
        }
      continue;
    }
    const auto& src = v.sectors[k];
    const int nl = k - b;  // spectator variables
    const double deltab = std::pow(delta(), b);
    const double scale =
        std::sqrt(static_cast<double>(factorial(k)) * static_cast<double>(factorial(kp))) /
        static_cast<double>(factorial(nl)) * deltab;
    std::vector<cplx> stage(powG_[kp], cplx{0.0, 0.0});
    for (long xa = 0; xa < powG_[a]; ++xa) {
      decode(a, xa, dth);
      for (long xl = 0; xl < powG_[nl]; ++xl) {
        decode(nl, xl, dv + b);
        cplx acc{0.0, 0.0};
        for (long xe = 0; xe < powG_[b]; ++xe) {
          decode(b, xe, deta);
          for (int t = 0; t < b; ++t) dv[t] = deta[b - 1 - t];  // reversed eta block
          acc += K[xa * powG_[b] + xe] * src[encode(k, dv)];
        }
        if (mid) acc *= mid(nl, dv + b);
        stage[xa * powG_[nl] + xl] = acc;
      }
    }
    stage = project_s_symmetric(kp, stage);
    auto& dst = out.sectors[kp];
    for (long i = 0; i < powG_[kp]; ++i) dst[i] += scale * stage[i];
  }
  return out;
}

FockVector FockSpace::apply_poincare(const std::array<double, 2>& x, double lambda,
                                     const FockVector& v) const {
  const double ratio = lambda / delta();
  const long shift = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(shift)) > 1e-9 * std::max(1.0, std::abs(ratio)))
    throw PreconditionError(
        "apply_poincare: boost must be an integer multiple of the grid spacing "
        "(off-grid boosts are not interpolated)");
  FockVector out = FockVector::vacuum(gsize(), v.n_max);
  out.sectors[0][0] = v.sectors[0][0];
  out.truncated = v.truncated;
  int d[kMaxSector], dsrc[kMaxSector];
  for (int n = 1; n <= v.n_max; ++n) {
    const auto& src = v.sectors[n];
    auto& dst = out.sectors[n];
    for (long i = 0; i < powG_[n]; ++i) {
      decode(n, i, d);
      bool in_range = true;
      for (int k = 0; k < n; ++k) {
        const long s = d[k] - shift;
        if (s < 0 || s >= gsize()) {
          in_range = false;
          break;
        }
        dsrc[k] = static_cast<int>(s);
      }
      if (!in_range) {
        dst[i] = 0.0;
        continue;
      }
      double phase = 0.0;
      for (int k = 0; k < n; ++k) phase += grid_.p_dot(d[k], x);
      dst[i] = std::exp(iu * phase) * src[encode(n, dsrc)];
    }
    if (shift != 0) {
      // flag weight pushed off the grid
      double dropped = 0.0, kept = 0.0;
      for (long i = 0; i < powG_[n]; ++i) kept += std::norm(dst[i]);
      for (long i = 0; i < powG_[n]; ++i) dropped += std::norm(src[i]);
      if (dropped > kept + 1e-14 * std::max(1.0, dropped)) out.truncated = true;
    }
  }
  return out;
}

FockVector FockSpace::apply_reflection(const FockVector& v) const {
  FockVector out = FockVector::vacuum(gsize(), v.n_max);
  out.truncated = v.truncated;
  out.sectors[0][0] = std::conj(v.sectors[0][0]);
  int d[kMaxSector], rr[kMaxSector];
  for (int n = 1; n <= v.n_max; ++n) {
    const auto& src = v.sectors[n];
    auto& dst = out.sectors[n];
    for (long i = 0; i < powG_[n]; ++i) {
      decode(n, i, d);
      for (int k = 0; k < n; ++k) rr[k] = d[n - 1 - k];
      dst[i] = std::conj(src[encode(n, rr)]);
    }
  }
  return out;
}

FockVector FockSpace::apply_energy_damp(const OmegaFn& omega, const FockVector& v,
                                        double sign) const {
  FockVector out = v;
  for (int n = 0; n <= v.n_max; ++n)
    for (long i = 0; i < powG_[n]; ++i)
      out.sectors[n][i] *= std::exp(sign * omega(energy_sum(n, i)));
  return out;
}

FockVector FockSpace::truncate(int k, const FockVector& v) const {
  FockVector out = v;
  for (int n = k + 1; n <= v.n_max; ++n)
    std::fill(out.sectors[n].begin(), out.sectors[n].end(), cplx{0.0, 0.0});
  return out;
}

GridOperator FockSpace::field(const std::vector<cplx>& fplus,
                              const std::vector<cplx>& fminus) const {
  auto conj_vec = [](const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[i]);
    return out;
  };
  const auto fp = fplus, fm = fminus;
  const auto fpc = conj_vec(fplus), fmc = conj_vec(fminus);
  GridOperator op;
  op.apply = [this, fp, fm](const FockVector& v) {
    FockVector a = create(fp, v);
    const FockVector b = annihilate(fm, v);
    for (int n = 0; n <= v.n_max; ++n)
      for (size_t i = 0; i < a.sectors[n].size(); ++i) a.sectors[n][i] += b.sectors[n][i];
    a.truncated = a.truncated || b.truncated;
    return a;
  };
  op.apply_adjoint = [this, fpc, fmc](const FockVector& v) {
    FockVector a = annihilate(fpc, v);
    const FockVector b = create(fmc, v);
    for (int n = 0; n <= v.n_max; ++n)
      for (size_t i = 0; i < a.sectors[n].size(); ++i) a.sectors[n][i] += b.sectors[n][i];
    a.truncated = a.truncated || b.truncated;
    return a;
  };
  return op;
}

GridOperator FockSpace::primed_field(const std::vector<cplx>& fplus,
                                     const std::vector<cplx>& fminus) const {
  std::vector<cplx> fpc(fplus.size()), fmc(fminus.size());
  for (size_t i = 0; i < fplus.size(); ++i) fpc[i] = std::conj(fplus[i]);
  for (size_t i = 0; i < fminus.size(); ++i) fmc[i] = std::conj(fminus[i]);
  const GridOperator inner_op = field(fpc, fmc);
  GridOperator op;
  op.apply = [this, inner_op](const FockVector& v) {
    return apply_reflection(inner_op.apply(apply_reflection(v)));
  };
  op.apply_adjoint = [this, inner_op](const FockVector& v) {
    return apply_reflection(inner_op.apply_adjoint(apply_reflection(v)));
  };
  return op;
}

FockVector FockSpace::apply_b_operator(const std::vector<cplx>& g, int q,
                                       const FockVector& v) const {
  if (static_cast<int>(g.size()) != gsize() || q < 0 || q >= gsize())
    throw PreconditionError("apply_b_operator: grid mismatch");
  FockVector out = v;
  int d[kMaxSector];
  for (int n = 0; n <= v.n_max; ++n)
    for (long i = 0; i < powG_[n]; ++i) {
      decode(n, i, d);
      cplx factor = g[q];
      for (int k = 0; k < n; ++k) factor *= s_table(q, d[k]);
      out.sectors[n][i] *= factor;
    }
  return out;
}

FockVector FockSpace::apply_b_operator_adjoint(const std::vector<cplx>& g, int q,
                                               const FockVector& v) const {
  FockVector out = v;
  int d[kMaxSector];
  for (int n = 0; n <= v.n_max; ++n)
    for (long i = 0; i < powG_[n]; ++i) {
      decode(n, i, d);
      cplx factor = std::conj(g[q]);
      for (int k = 0; k < n; ++k) factor *= std::conj(s_table(q, d[k]));
      out.sectors[n][i] *= factor;
    }
  return out;
}

FockVector FockSpace::apply_primed_annihilate(const std::vector<cplx>& g,
                                              const FockVector& v) const {
  return apply_reflection(annihilate(g, apply_reflection(v)));
}

FockVector FockSpace::apply_primed_create(const std::vector<cplx>& g,
                                          const FockVector& v) const {
  return apply_reflection(create(g, apply_reflection(v)));
}

namespace {

FockVector axpy(const FockVector& x, cplx alpha, const FockVector& y) {
  FockVector out = x;
  for (size_t n = 0; n < out.sectors.size(); ++n)
    for (size_t i = 0; i < out.sectors[n].size(); ++i)
      out.sectors[n][i] += alpha * y.sectors[n][i];
  out.truncated = out.truncated || y.truncated;
  return out;
}

double diff_residual(const FockSpace& space, const FockVector& lhs,
                     const FockVector& rhs) {
  const FockVector d = axpy(lhs, cplx{-1.0, 0.0}, rhs);
  const double scale = std::max({1.0, space.norm(lhs), space.norm(rhs)});
  return space.norm(d) / scale;
}

std::vector<cplx> random_smearing(const FockSpace& space, Rng& rng) {
  std::vector<cplx> f(space.gsize());
  for (auto& v : f) v = cplx{rng.normal(), rng.normal()};
  return f;
}

}  // namespace

CheckReport check_zf_relations(const FockSpace& space, int trials,
                               std::uint64_t seed, double tol) {
  if (space.n_max() < 2)
    throw PreconditionError("check_zf_relations: n_max must be >= 2");
  const int G = space.gsize();
  Rng rng = Rng::seeded(seed).derive("zf-relations/" + space.scattering().name());

  double worst1 = 0.0, worst2 = 0.0, worst3 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto f = random_smearing(space, rng);
    const auto g = random_smearing(space, rng);
    const FockVector low = space.random_vector(rng, space.n_max() - 2);
    const FockVector full = space.random_vector(rng);

    // swapped-order kernel K[p][q] = g[p] f[q] S(theta_q - theta_p)
    std::vector<cplx> K(static_cast<size_t>(G) * G);
    for (int p = 0; p < G; ++p)
      for (int q = 0; q < G; ++q)
        K[p * G + q] = g[p] * f[q] * space.s_table(q, p);

    // creator exchange
    {
      const FockVector lhs = space.create(f, space.create(g, low));
      const FockVector rhs = space.apply_zdagz(K, 2, 0, low);
      worst1 = std::max(worst1, diff_residual(space, lhs, rhs));
    }
    // annihilator exchange
    {
      const FockVector lhs = space.annihilate(f, space.annihilate(g, full));
      const FockVector rhs = space.apply_zdagz(K, 0, 2, full);
      worst2 = std::max(worst2, diff_residual(space, lhs, rhs));
    }
    // mixed relation with the discrete delta term
    {
      const FockVector mid = space.random_vector(rng, space.n_max() - 1);
      const FockVector lhs = space.annihilate(f, space.create(g, mid));
      FockVector rhs = FockVector::vacuum(G, space.n_max());
      rhs.sectors[0][0] = 0.0;
      for (int q = 0; q < G; ++q) {
        if (std::abs(g[q]) == 0.0) continue;
        std::vector<cplx> fq(G);
        for (int p = 0; p < G; ++p) fq[p] = space.s_table(q, p) * f[p];
        std::vector<cplx> eq(G, cplx{0.0, 0.0});
        eq[q] = 1.0;
        rhs = axpy(rhs, g[q], space.create(eq, space.annihilate(fq, mid)));
      }
      cplx pairing{0.0, 0.0};
      for (int p = 0; p < G; ++p) pairing += f[p] * g[p];
      pairing *= space.delta();
      rhs = axpy(rhs, pairing, mid);
      worst3 = std::max(worst3, diff_residual(space, lhs, rhs));
    }
  }

  CheckReport rep;
  rep.suite = "zf-relations";
  rep.environment["scattering"] = space.scattering().spec_string();
  auto add = [&](const std::string& name, const std::string& id, double worst) {
    Check c = make_check(name, id, worst, tol, trials, seed);
    rep.add(c);
  };
  add("zf.exchange.creators", "zf.exchange-relation-creators", worst1);
  add("zf.exchange.annihilators", "zf.exchange-relation-annihilators", worst2);
  add("zf.mixed.delta-term", "zf.mixed-relation-with-delta", worst3);
  return rep;
}

CheckReport check_primed_commutators(const FockSpace& space, int trials,
                                     std::uint64_t seed, double tol) {
  const int G = space.gsize();
  Rng rng = Rng::seeded(seed).derive("primed-commutators/" + space.scattering().name());
  double worst_single = 0.0, worst_exchange = 0.0, worst_string = 0.0;

  auto conj_vec = [](std::vector<cplx> v) {
    for (auto& x : v) x = std::conj(x);
    return v;
  };

  for (int t = 0; t < trials; ++t) {
    const auto g = random_smearing(space, rng);
    const auto f = random_smearing(space, rng);
    const auto f2 = random_smearing(space, rng);
    const FockVector low = space.random_vector(rng, space.n_max() - 1);
    const FockVector low2 = space.random_vector(rng, space.n_max() - 2);
    const auto gbar = conj_vec(g);

    // [z(gbar)', z^dagger(f)] = Delta sum_q f[q] B^{g,theta_q}
    {
      const FockVector lhs =
          axpy(space.apply_primed_annihilate(gbar, space.create(f, low)),
               cplx{-1.0, 0.0}, space.create(f, space.apply_primed_annihilate(gbar, low)));
      FockVector rhs = FockVector::vacuum(G, space.n_max());
      rhs.sectors[0][0] = 0.0;
      for (int q = 0; q < G; ++q)
        rhs = axpy(rhs, space.delta() * f[q], space.apply_b_operator(g, q, low));
      worst_single = std::max(worst_single, diff_residual(space, lhs, rhs));
    }
    // exchange relation B^{g,theta_q} z^dagger(f) = z^dagger(f S(theta_q - .)) B^{g,theta_q}
    {
      const int q = rng.index(G);
      const FockVector lhs = space.apply_b_operator(g, q, space.create(f, low));
      std::vector<cplx> fprime(G);
      for (int p = 0; p < G; ++p) fprime[p] = space.s_table(q, p) * f[p];
      const FockVector rhs = space.create(fprime, space.apply_b_operator(g, q, low));
      worst_exchange = std::max(worst_exchange, diff_residual(space, lhs, rhs));
    }
    // two-creator string version
    {
      const FockVector zdd = space.create(f, space.create(f2, low2));
      const FockVector lhs =
          axpy(space.apply_primed_annihilate(gbar, zdd), cplx{-1.0, 0.0},
               space.create(f, space.create(f2, space.apply_primed_annihilate(gbar, low2))));
      FockVector rhs = FockVector::vacuum(G, space.n_max());
      rhs.sectors[0][0] = 0.0;
      for (int q = 0; q < G; ++q) {
        // j = 1 term: S(theta_1 - theta_2) folded into the second smearing
        std::vector<cplx> f2s(G);
        for (int p = 0; p < G; ++p) f2s[p] = space.s_table(q, p) * f2[p];
        rhs = axpy(rhs, space.delta() * f[q],
                   space.create(f2s, space.apply_b_operator(g, q, low2)));
        // j = 2 term
        rhs = axpy(rhs, space.delta() * f2[q],
                   space.create(f, space.apply_b_operator(g, q, low2)));
      }
      worst_string = std::max(worst_string, diff_residual(space, lhs, rhs));
    }
  }

  CheckReport rep;
  rep.suite = "primed-commutators";
  rep.environment["scattering"] = space.scattering().spec_string();
  rep.add(make_check("bop.single-commutator", "primed-z-commutator-is-B", worst_single,
                     tol, trials, seed));
  rep.add(make_check("bop.exchange", "B-creator-exchange-relation", worst_exchange, tol,
                     trials, seed));
  rep.add(make_check("bop.two-creator-string", "primed-z-commutator-string-m2",
                     worst_string, tol, trials, seed));
  return rep;
}

namespace {

double operator_norm(const FockSpace& space,
                     const std::function<FockVector(const FockVector&)>& X,
                     const std::function<FockVector(const FockVector&)>& Xadj,
                     int start_sector_cap, std::uint64_t seed) {
  Rng rng = Rng::seeded(seed).derive("qform-norm");
  FockVector v = space.random_vector(rng, start_sector_cap);
  const double nv = space.norm(v);
  if (nv == 0.0) return 0.0;
  for (int n = 0; n <= v.n_max; ++n)
    for (auto& x : v.sectors[n]) x /= nv;
  double prev = 0.0;
  for (int it = 0; it < 600; ++it) {
    const FockVector w = X(v);
    const double nw = space.norm(w);
    if (nw == 0.0) return 0.0;
    FockVector u = Xadj(w);
    const double nu = space.norm(u);
    if (nu == 0.0) return 0.0;
    for (int n = 0; n <= u.n_max; ++n)
      for (auto& x : u.sectors[n]) x /= nu;
    v = u;
    const double sigma = std::sqrt(nu);
    if (it > 3 && std::abs(sigma - prev) <= 1e-13 * std::max(1.0, sigma)) return sigma;
    prev = sigma;
  }
  return prev;
}

}  // namespace

double qform_norm(const FockSpace& space, const GridOperator& A, int k,
                  const OmegaFn& omega) {
  if (k > space.n_max())
    throw PreconditionError("qform_norm: k exceeds the space truncation");
  auto damp = [&](const FockVector& v) { return space.apply_energy_damp(omega, v); };
  auto Qk = [&](const FockVector& v) { return space.truncate(k, v); };

  auto X1 = [&](const FockVector& v) { return Qk(A.apply(damp(Qk(v)))); };
  auto X1a = [&](const FockVector& v) { return Qk(damp(A.apply_adjoint(Qk(v)))); };
  auto X2 = [&](const FockVector& v) { return Qk(damp(A.apply(Qk(v)))); };
  auto X2a = [&](const FockVector& v) { return Qk(A.apply_adjoint(damp(Qk(v)))); };

  const double s1 = operator_norm(space, X1, X1a, k, 101);
  const double s2 = operator_norm(space, X2, X2a, k, 202);
  return 0.5 * s1 + 0.5 * s2;
}

CheckReport check_zdag_norm_bound(const FockSpace& space, const OmegaFn& omega,
                                  const std::vector<cplx>& f, int ell) {
  std::vector<cplx> fbar(f.size());
  for (size_t i = 0; i < f.size(); ++i) fbar[i] = std::conj(f[i]);

  auto damp_minus = [&](const FockVector& v) { return space.apply_energy_damp(omega, v, -1.0); };
  auto damp_plus = [&](const FockVector& v) { return space.apply_energy_damp(omega, v, +1.0); };
  auto Ql = [&](const FockVector& v) { return space.truncate(ell, v); };

  auto Xc = [&](const FockVector& v) {
    return damp_plus(space.create(f, damp_minus(Ql(v))));
  };
  auto Xca = [&](const FockVector& v) {
    return Ql(damp_minus(space.annihilate(fbar, damp_plus(v))));
  };
  auto Xa = [&](const FockVector& v) {
    return damp_plus(space.annihilate(f, damp_minus(Ql(v))));
  };
  auto Xaa = [&](const FockVector& v) {
    return Ql(damp_minus(space.create(fbar, damp_plus(v))));
  };

  double fnorm2 = 0.0, fnorm2_omega = 0.0;
  for (int p = 0; p < space.gsize(); ++p) {
    const double w = std::norm(f[p]);
    fnorm2 += w;
    fnorm2_omega += w * std::exp(2.0 * omega(std::cosh(space.grid().point(p))));
  }
  fnorm2 = std::sqrt(space.delta() * fnorm2);
  fnorm2_omega = std::sqrt(space.delta() * fnorm2_omega);

  const double lhs_c = operator_norm(space, Xc, Xca, ell, 303);
  const double rhs_c = std::sqrt(static_cast<double>(ell + 1)) * fnorm2_omega;
  const double lhs_a = operator_norm(space, Xa, Xaa, ell, 404);
  const double rhs_a = std::sqrt(static_cast<double>(ell)) * fnorm2;

  CheckReport rep;
  rep.suite = "zdag-norm-bounds";
  Check c1;
  c1.name = "norm-bound.creator";
  c1.identity = "weighted-creator-norm-bound";
  c1.rule = "lhs <= sqrt(l+1) * |f|_2^omega";
  c1.values["lhs"] = lhs_c;
  c1.values["rhs"] = rhs_c;
  c1.max_residual = std::max(0.0, lhs_c - rhs_c);
  c1.tol = 1e-9 * std::max(1.0, rhs_c);
  c1.passed = lhs_c <= rhs_c * (1.0 + 1e-9);
  rep.add(c1);
  Check c2;
  c2.name = "norm-bound.annihilator";
  c2.identity = "weighted-annihilator-norm-bound";
  c2.rule = "lhs <= sqrt(l) * |f|_2";
  c2.values["lhs"] = lhs_a;
  c2.values["rhs"] = rhs_a;
  c2.max_residual = std::max(0.0, lhs_a - rhs_a);
  c2.tol = 1e-9 * std::max(1.0, rhs_a);
  c2.passed = lhs_a <= rhs_a * (1.0 + 1e-9);
  rep.add(c2);
  return rep;
}

}  // namespace zf
