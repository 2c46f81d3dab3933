#include "zflab/araki.hpp"

#include <algorithm>
#include <cmath>

#include "zflab/linalg.hpp"

namespace zf {

namespace {

std::vector<VarRef> theta_refs(const std::vector<int>& idx) {
  std::vector<VarRef> out;
  out.reserve(idx.size());
  for (const int i : idx) out.push_back({false, i});
  return out;
}

std::vector<VarRef> eta_refs_global(const std::vector<int>& idx, int m) {
  std::vector<VarRef> out;
  out.reserve(idx.size());
  for (const int r : idx) out.push_back({true, r - m});
  return out;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// multiply every term by (-1)^{|C|} delta_C S_C
DeltaKernel decorate_with_contraction(const ScatteringFunction& S,
                                      const Contraction& C, DeltaKernel inner) {
  const cplx sign{C.size() % 2 == 0 ? 1.0 : -1.0, 0.0};
  for (auto& term : inner.terms) {
    term.coeff *= sign;
    for (const auto& [l, r] : C.pairs) term.pairs.push_back({l, r - C.m});
    const KernelFn prev = term.pref;
    const ScatteringFunction Sc = S;
    const Contraction Cc = C;
    term.pref = [prev, Sc, Cc](std::span<const cplx> theta, std::span<const cplx> eta) {
      cplx v = s_c(Sc, Cc, theta, eta);
      if (prev) v *= prev(theta, eta);
      return v;
    };
  }
  return inner;
}

}  // namespace

DeltaKernel wick_matrix_element(const ScatteringFunction& S,
                                const OperatorExpansion& A, int m, int n) {
  return wick_block_element(S, A, theta_refs(iota_vec(m)),
                            [&] {
                              std::vector<VarRef> r;
                              for (int j = 0; j < n; ++j) r.push_back({true, j});
                              return r;
                            }(),
                            m, n);
}

DeltaKernel wick_matrix_element_contracted(const ScatteringFunction& S,
                                           const OperatorExpansion& A,
                                           const Contraction& C) {
  std::vector<VarRef> right;
  for (const int r : C.free_right()) right.push_back({true, r - C.m});
  return wick_block_element(S, A, theta_refs(C.free_left()), right, C.m, C.n);
}

DeltaKernel contracted_coefficients(const ScatteringFunction& S,
                                    const OperatorExpansion& A, int m, int n) {
  if (m + n > kDefaultArityCap + 2)
    throw ResourceError("contracted_coefficients: arity beyond configured cap");
  DeltaKernel total = DeltaKernel::zero(m, n);
  for (const auto& C : enumerate_contractions(m, n))
    total.append(decorate_with_contraction(S, C, wick_matrix_element_contracted(S, A, C)));
  return total;
}

Check verify_inversion(const ScatteringFunction& S, const OperatorExpansion& A,
                       int m, int n, const SmearBattery& battery, double tol) {
  const DeltaKernel lhs = wick_matrix_element(S, A, m, n);
  DeltaKernel rhs = DeltaKernel::zero(m, n);
  for (const auto& C : enumerate_contractions(m, n)) {
    const DeltaKernel inner =
        contracted_coefficients(S, A, m - C.size(), n - C.size());
    rhs.append(attach_contraction(S, C, inner, cplx{1.0, 0.0}));
  }
  const double dist = weak_distance(lhs, rhs, battery);
  return make_check("araki.inversion(m=" + std::to_string(m) +
                        ",n=" + std::to_string(n) + "," + S.name() + ")",
                    "araki.inversion-formula", dist, tol,
                    static_cast<long>(battery.functions.size()));
}

CheckReport verify_symmetry_and_poincare(
    const ScatteringFunction& S, const OperatorExpansion& A, int m, int n,
    const std::vector<std::pair<std::array<double, 2>, double>>& transforms,
    double mass, const SmearBattery& battery, std::uint64_t seed, double tol) {
  CheckReport rep;
  rep.suite = "araki-symmetry-poincare";
  const DeltaKernel coeffs = contracted_coefficients(S, A, m, n);

  Rng rng = Rng::seeded(seed).derive("araki-symmetry");
  double worst_sym = 0.0;
  for (int t = 0; t < 3; ++t) {
    const Permutation pi = random_permutation(m, rng);
    const Permutation tau = random_permutation(n, rng);
    const DeltaKernel permuted = permute_kernel(S, coeffs, pi, tau);
    worst_sym = std::max(worst_sym, weak_distance(coeffs, permuted, battery));
  }
  rep.add(make_check("araki.coefficient-s-symmetry", "araki.coefficient-s-symmetry",
                     worst_sym, tol, 3, seed));

  double worst_poi = 0.0;
  for (const auto& [x, lambda] : transforms) {
    OperatorExpansion transformed;
    for (const auto& term : A.terms) {
      const KernelFn g = term.g;
      const auto xc = x;
      const double lc = lambda, mc = mass;
      KernelFn gt = [g, xc, lc, mc](std::span<const cplx> th, std::span<const cplx> et) {
        std::vector<cplx> ts(th.size()), es(et.size());
        cplx phase{0.0, 0.0};
        for (size_t i = 0; i < th.size(); ++i) {
          ts[i] = th[i] - lc;
          phase += mc * (std::cosh(th[i]) * xc[0] - std::sinh(th[i]) * xc[1]);
        }
        for (size_t j = 0; j < et.size(); ++j) {
          es[j] = et[j] - lc;
          phase -= mc * (std::cosh(et[j]) * xc[0] - std::sinh(et[j]) * xc[1]);
        }
        return std::exp(iu * phase) * g(ts, es);
      };
      transformed.terms.push_back({term.m, term.n, std::move(gt)});
    }
    const DeltaKernel lhs = contracted_coefficients(S, transformed, m, n);
    const DeltaKernel rhs = poincare_transform_kernel(coeffs, mass, x, lambda);
    worst_poi = std::max(worst_poi, weak_distance(lhs, rhs, battery));
  }
  rep.add(make_check("araki.coefficient-poincare-covariance",
                     "araki.coefficient-poincare-covariance", worst_poi, tol,
                     static_cast<long>(transforms.size()), seed));
  return rep;
}

Check verify_reflection(const ScatteringFunction& S, const OperatorExpansion& A,
                        int m, int n, const SmearBattery& battery, double tol) {
  DeltaKernel lhs = DeltaKernel::zero(m, n);
  DeltaKernel rhs = DeltaKernel::zero(m, n);
  for (const auto& C : enumerate_contractions(m, n)) {
    // <l_{C^J}(eta-hat)| A |r_{C^J}(theta-hat)> on the full (m,n) space
    const DeltaKernel raw = wick_block_element(
        S, A, eta_refs_global(C.free_right(), C.m), theta_refs(C.free_left()), m, n);
    lhs.append(decorate_with_contraction(S, C, raw));

    const DeltaKernel inner =
        contracted_coefficients(S, A, n - C.size(), m - C.size());
    const cplx sign{C.size() % 2 == 0 ? 1.0 : -1.0, 0.0};
    rhs.append(attach_contraction(S, C, inner, sign, /*with_rc=*/true,
                                  /*swap_inner_args=*/true));
  }
  const double dist = weak_distance(lhs, rhs, battery);
  return make_check("araki.reflection(m=" + std::to_string(m) +
                        ",n=" + std::to_string(n) + "," + S.name() + ")",
                    "araki.reflection-formula-with-RC", dist, tol,
                    static_cast<long>(battery.functions.size()));
}

FockVector apply_expansion(const FockSpace& space, const OperatorExpansion& A,
                           const FockVector& v) {
  FockVector out = FockVector::vacuum(space.gsize(), v.n_max);
  out.sectors[0][0] = 0.0;
  for (const auto& term : A.terms) {
    const int nv = term.m + term.n;
    std::vector<cplx> arr(space.sector_size(nv));
    std::vector<cplx> th(term.m), et(term.n);
    std::vector<int> d(std::max(nv, 1));
    for (long flat = 0; flat < static_cast<long>(arr.size()); ++flat) {
      long rest = flat;
      for (int k = nv - 1; k >= 0; --k) {
        d[k] = static_cast<int>(rest % space.gsize());
        rest /= space.gsize();
      }
      for (int i = 0; i < term.m; ++i) th[i] = space.grid().point(d[i]);
      for (int j = 0; j < term.n; ++j) et[j] = space.grid().point(d[term.m + j]);
      arr[flat] = term.g(th, et);
    }
    const double norm = 1.0 / (static_cast<double>(factorial(term.m)) *
                               static_cast<double>(factorial(term.n)));
    const FockVector part = space.apply_zdagz(arr, term.m, term.n, v);
    for (int s = 0; s <= v.n_max; ++s)
      for (size_t i = 0; i < out.sectors[s].size(); ++i)
        out.sectors[s][i] += norm * part.sectors[s][i];
    out.truncated = out.truncated || part.truncated;
  }
  return out;
}

namespace {

FockVector subtract(const FockVector& a, const FockVector& b) {
  FockVector out = a;
  for (size_t n = 0; n < out.sectors.size(); ++n)
    for (size_t i = 0; i < out.sectors[n].size(); ++i)
      out.sectors[n][i] -= b.sectors[n][i];
  return out;
}

}  // namespace

Check verify_commutator_expansion(const FockSpace& space, const OperatorExpansion& A,
                                  const std::vector<cplx>& gplus,
                                  const std::vector<cplx>& gminus, int trials,
                                  std::uint64_t seed, double tol) {
  const ScatteringFunction& S = space.scattering();
  const int G = space.gsize();
  const double delta = space.delta();
  Rng rng = Rng::seeded(seed).derive("araki-commutator");

  const GridOperator phi_prime = space.primed_field(gplus, gminus);

  // precompute sliced coefficient kernels per relevant arity
  struct SandwichPiece {
    int m, n;
    bool star_side;  // true: (B^{conj g+,xi})^* insertion, else B^{g-,xi}
    std::vector<cplx> full;  // kernel on grid^{m+n+1}, xi at digit m
  };
  std::vector<SandwichPiece> pieces;
  for (const auto& [am, an] : A.arities()) {
    if (an >= 1) {
      SandwichPiece p;
      p.m = am;
      p.n = an - 1;
      p.star_side = true;
      p.full = evaluate_on_grid(contracted_coefficients(S, A, am, an), space.grid());
      pieces.push_back(std::move(p));
    }
    if (am >= 1) {
      SandwichPiece p;
      p.m = am - 1;
      p.n = an;
      p.star_side = false;
      p.full = evaluate_on_grid(contracted_coefficients(S, A, am, an), space.grid());
      pieces.push_back(std::move(p));
    }
  }

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FockVector v = space.random_vector(rng, space.n_max() - 2);

    const FockVector lhs =
        subtract(apply_expansion(space, A, phi_prime.apply(v)),
                 phi_prime.apply(apply_expansion(space, A, v)));

    FockVector rhs = FockVector::vacuum(G, space.n_max());
    rhs.sectors[0][0] = 0.0;
    for (const auto& piece : pieces) {
      const long block_eta = space.sector_size(piece.n);
      const double norm = delta / (static_cast<double>(factorial(piece.m)) *
                                   static_cast<double>(factorial(piece.n)));
      std::vector<cplx> slice(space.sector_size(piece.m + piece.n));
      for (int q = 0; q < G; ++q) {
        for (long xt = 0; xt < space.sector_size(piece.m); ++xt)
          for (long xe = 0; xe < block_eta; ++xe)
            slice[xt * block_eta + xe] = piece.full[(xt * G + q) * block_eta + xe];

        FockSpace::MidFn mid;
        if (piece.star_side) {
          const cplx gq = gplus[q];
          mid = [&space, gq, q](int k, const int* d) {
            cplx f = gq;
            for (int j = 0; j < k; ++j) f *= std::conj(space.s_table(q, d[j]));
            return f;
          };
        } else {
          const cplx gq = gminus[q];
          mid = [&space, gq, q](int k, const int* d) {
            cplx f = gq;
            for (int j = 0; j < k; ++j) f *= space.s_table(q, d[j]);
            return f;
          };
        }
        const FockVector part =
            space.apply_zdagz_mid(slice, piece.m, piece.n, mid, v);
        const double sgn = piece.star_side ? 1.0 : -1.0;
        for (int s = 0; s <= space.n_max(); ++s)
          for (size_t i = 0; i < rhs.sectors[s].size(); ++i)
            rhs.sectors[s][i] += sgn * norm * part.sectors[s][i];
      }
    }

    const FockVector d = subtract(lhs, rhs);
    const double scale = std::max({1.0, space.norm(lhs), space.norm(rhs)});
    worst = std::max(worst, space.norm(d) / scale);
  }
  return make_check("araki.commutator-expansion(" + S.name() + ")",
                    "araki.field-commutator-expansion", worst, tol, trials, seed);
}

Check verify_roundtrip(const FockSpace& space, const OperatorExpansion& A,
                       int max_m, int max_n, int trials, std::uint64_t seed,
                       double tol) {
  const ScatteringFunction& S = space.scattering();
  const int G = space.gsize();
  Rng rng = Rng::seeded(seed).derive("araki-roundtrip");

  // coefficient kernels up to the caps, as grid arrays
  std::vector<std::vector<std::vector<cplx>>> karr(max_m + 1);
  for (int m = 0; m <= max_m; ++m) {
    karr[m].resize(max_n + 1);
    for (int n = 0; n <= max_n; ++n)
      karr[m][n] = evaluate_on_grid(contracted_coefficients(S, A, m, n), space.grid());
  }

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<cplx>> fs(max_m), hs(max_n);
    for (auto& f : fs) {
      f.resize(G);
      for (auto& x : f) x = cplx{rng.normal(), rng.normal()};
    }
    for (auto& h : hs) {
      h.resize(G);
      for (auto& x : h) x = cplx{rng.normal(), rng.normal()};
    }

    for (int m = 0; m <= max_m; ++m) {
      for (int n = 0; n <= max_n; ++n) {
        // bra l(conj f_1 .. conj f_m), ket r(h) = zdag(h_n)...zdag(h_1) Omega
        FockVector bra = FockVector::vacuum(G, space.n_max());
        for (int i = m - 1; i >= 0; --i) {
          std::vector<cplx> cf(G);
          for (int p = 0; p < G; ++p) cf[p] = std::conj(fs[i][p]);
          bra = space.create(cf, bra);
        }
        FockVector ket = FockVector::vacuum(G, space.n_max());
        for (int j = 0; j < n; ++j) ket = space.create(hs[j], ket);

        const cplx lhs = space.inner(bra, apply_expansion(space, A, ket));
        cplx rhs{0.0, 0.0};
        for (int mm = 0; mm <= max_m; ++mm)
          for (int nn = 0; nn <= max_n; ++nn) {
            const double norm = 1.0 / (static_cast<double>(factorial(mm)) *
                                       static_cast<double>(factorial(nn)));
            rhs += norm *
                   space.inner(bra, space.apply_zdagz(karr[mm][nn], mm, nn, ket));
          }
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
      }
    }
  }
  return make_check("araki.roundtrip(" + S.name() + ")",
                    "araki.expansion-roundtrip", worst, tol, trials, seed);
}

Check check_coefficient_norm_finite(const ScatteringFunction& S,
                                    const OperatorExpansion& A, int m, int n,
                                    const RapidityGrid& grid, double ceiling) {
  const std::vector<cplx> arr =
      evaluate_on_grid(contracted_coefficients(S, A, m, n), grid);
  long rows = 1, cols = 1;
  for (int i = 0; i < m; ++i) rows *= grid.n_points;
  for (int j = 0; j < n; ++j) cols *= grid.n_points;
  Mat K(rows, cols);
  const double wl = std::pow(grid.spacing(), 0.5 * m);
  const double wr = std::pow(grid.spacing(), 0.5 * n);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) K(r, c) = wl * arr[r * cols + c] * wr;
  const double sigma = largest_singular_value(K);
  Check c;
  c.name = "araki.coefficient-norm(m=" + std::to_string(m) + ",n=" +
           std::to_string(n) + ")";
  c.identity = "araki.coefficient-cross-norm-finite";
  c.rule = "cross norm finite (below ceiling)";
  c.values["cross_norm"] = sigma;
  c.values["ceiling"] = ceiling;
  c.max_residual = std::max(0.0, sigma - ceiling);
  c.tol = 0.0;
  c.passed = std::isfinite(sigma) && sigma <= ceiling;
  return c;
}

}  // namespace zf
