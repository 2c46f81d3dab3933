#include "zflab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace zf {

DeltaKernel DeltaKernel::plain(int m, int n, KernelFn f, cplx coeff) {
  DeltaKernel k{m, n, {}};
  DKTerm t;
  t.coeff = coeff;
  t.pref = std::move(f);
  k.terms.push_back(std::move(t));
  return k;
}

void DeltaKernel::append(const DeltaKernel& other) {
  if (other.m != m || other.n != n)
    throw PreconditionError("DeltaKernel::append: arity mismatch");
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
}

SmearBattery SmearBattery::make(const RapidityGrid& grid, int m, int n, int count,
                                std::uint64_t seed) {
  SmearBattery b;
  b.grid = grid;
  b.m = m;
  b.n = n;
  Rng rng = Rng::seeded(seed).derive("smear-battery");
  const double span = grid.theta_max - grid.theta_min;
  b.functions.resize(count);
  for (int c = 0; c < count; ++c) {
    b.functions[c].resize(m + n);
    for (int v = 0; v < m + n; ++v) {
      const double center = rng.uniform(grid.theta_min, grid.theta_max);
      const double width = rng.uniform(0.25, 0.6) * span;
      const double osc = rng.uniform(-2.0, 2.0);
      auto& arr = b.functions[c][v];
      arr.resize(grid.n_points);
      for (int p = 0; p < grid.n_points; ++p) {
        const double t = grid.point(p);
        arr[p] = std::exp(cplx{-sqr(t - center) / (2.0 * width * width), osc * t});
      }
    }
  }
  return b;
}

cplx smear(const DeltaKernel& K, const RapidityGrid& grid,
           std::span<const std::vector<cplx>> gs,
           std::span<const std::vector<cplx>> hs) {
  if (static_cast<int>(gs.size()) != K.m || static_cast<int>(hs.size()) != K.n)
    throw PreconditionError("smear: test function arity mismatch");
  const int G = grid.n_points;
  const double delta = grid.spacing();
  std::vector<cplx> theta(K.m), eta(K.n);
  std::vector<double> pts(G);
  for (int p = 0; p < G; ++p) pts[p] = grid.point(p);

  cplx total{0.0, 0.0};
  for (const auto& term : K.terms) {
    // independent variables: free thetas, free etas, one per delta pair
    std::vector<int> free_theta, free_eta;
    std::vector<bool> theta_used(K.m, false), eta_used(K.n, false);
    for (const auto& [i, j] : term.pairs) {
      theta_used[i] = true;
      eta_used[j] = true;
    }
    for (int i = 0; i < K.m; ++i)
      if (!theta_used[i]) free_theta.push_back(i);
    for (int j = 0; j < K.n; ++j)
      if (!eta_used[j]) free_eta.push_back(j);

    const int nv = static_cast<int>(free_theta.size() + free_eta.size() + term.pairs.size());
    long total_points = 1;
    for (int v = 0; v < nv; ++v) total_points *= G;
    const double weight = std::pow(delta, nv);

    cplx acc{0.0, 0.0};
    std::vector<int> digit(std::max(nv, 1), 0);
    for (long flat = 0; flat < total_points; ++flat) {
      long rest = flat;
      for (int v = nv - 1; v >= 0; --v) {
        digit[v] = static_cast<int>(rest % G);
        rest /= G;
      }
      int v = 0;
      cplx testval{1.0, 0.0};
      for (const int i : free_theta) {
        theta[i] = pts[digit[v]];
        testval *= gs[i][digit[v]];
        ++v;
      }
      for (const int j : free_eta) {
        eta[j] = pts[digit[v]];
        testval *= hs[j][digit[v]];
        ++v;
      }
      for (const auto& [i, j] : term.pairs) {
        theta[i] = pts[digit[v]];
        eta[j] = pts[digit[v]];
        testval *= gs[i][digit[v]] * hs[j][digit[v]];
        ++v;
      }
      const cplx p = term.pref ? term.pref(theta, eta) : cplx{1.0, 0.0};
      acc += testval * p;
    }
    total += term.coeff * weight * acc;
  }
  return total;
}

double weak_distance(const DeltaKernel& k1, const DeltaKernel& k2,
                     const SmearBattery& battery) {
  if (k1.m != k2.m || k1.n != k2.n)
    throw PreconditionError("weak_distance: arity mismatch");
  double scale = 1.0, worst = 0.0;
  std::vector<cplx> v1(battery.functions.size()), v2(battery.functions.size());
  for (size_t b = 0; b < battery.functions.size(); ++b) {
    std::span<const std::vector<cplx>> all(battery.functions[b]);
    v1[b] = smear(k1, battery.grid, all.subspan(0, k1.m), all.subspan(k1.m, k1.n));
    v2[b] = smear(k2, battery.grid, all.subspan(0, k1.m), all.subspan(k1.m, k1.n));
    scale = std::max({scale, std::abs(v1[b]), std::abs(v2[b])});
  }
  for (size_t b = 0; b < battery.functions.size(); ++b)
    worst = std::max(worst, std::abs(v1[b] - v2[b]));
  return worst / scale;
}

std::vector<cplx> evaluate_on_grid(const DeltaKernel& K, const RapidityGrid& grid) {
  const int G = grid.n_points;
  const int nv = K.m + K.n;
  long size = 1;
  for (int v = 0; v < nv; ++v) size *= G;
  if (size > (1L << 24))
    throw ResourceError("evaluate_on_grid: kernel too large for this grid");
  std::vector<cplx> out(size, cplx{0.0, 0.0});
  std::vector<cplx> theta(K.m), eta(K.n);
  std::vector<int> digit(std::max(nv, 1), 0);
  const double inv_delta = 1.0 / grid.spacing();
  for (long flat = 0; flat < size; ++flat) {
    long rest = flat;
    for (int v = nv - 1; v >= 0; --v) {
      digit[v] = static_cast<int>(rest % G);
      rest /= G;
    }
    for (int i = 0; i < K.m; ++i) theta[i] = grid.point(digit[i]);
    for (int j = 0; j < K.n; ++j) eta[j] = grid.point(digit[K.m + j]);
    cplx acc{0.0, 0.0};
    for (const auto& term : K.terms) {
      double dfactor = 1.0;
      bool support = true;
      for (const auto& [i, j] : term.pairs) {
        if (digit[i] != digit[K.m + j]) {
          support = false;
          break;
        }
        dfactor *= inv_delta;
      }
      if (!support) continue;
      const cplx p = term.pref ? term.pref(theta, eta) : cplx{1.0, 0.0};
      acc += term.coeff * dfactor * p;
    }
    out[flat] = acc;
  }
  return out;
}

DeltaKernel permute_kernel(const ScatteringFunction& S, const DeltaKernel& K,
                           const Permutation& pi, const Permutation& tau) {
  if (pi.degree() != K.m || tau.degree() != K.n)
    throw PreconditionError("permute_kernel: permutation degree mismatch");
  DeltaKernel out{K.m, K.n, {}};
  for (const auto& term : K.terms) {
    DKTerm t;
    t.coeff = term.coeff;
    // delta(theta'_i - eta'_j) with theta' = theta^pi is delta(theta_{pi(i)} - eta_{tau(j)})
    for (const auto& [i, j] : term.pairs) t.pairs.push_back({pi(i), tau(j)});
    const KernelFn inner = term.pref;
    const Permutation pi_c = pi, tau_c = tau;
    const ScatteringFunction Sc = S;
    t.pref = [inner, pi_c, tau_c, Sc](std::span<const cplx> theta,
                                      std::span<const cplx> eta) {
      const auto tp = pi_c.permute(theta);
      const auto ep = tau_c.permute(eta);
      cplx v = s_sigma(Sc, pi_c, theta) * s_sigma(Sc, tau_c, eta);
      if (inner) v *= inner(tp, ep);
      return v;
    };
    out.terms.push_back(std::move(t));
  }
  return out;
}

DeltaKernel poincare_transform_kernel(const DeltaKernel& K, double mass,
                                      const std::array<double, 2>& x, double lambda) {
  DeltaKernel out{K.m, K.n, {}};
  for (const auto& term : K.terms) {
    DKTerm t;
    t.coeff = term.coeff;
    t.pairs = term.pairs;  // common shift leaves delta pairs unchanged
    const KernelFn inner = term.pref;
    t.pref = [inner, mass, x, lambda](std::span<const cplx> theta,
                                      std::span<const cplx> eta) {
      cplx phase{0.0, 0.0};
      for (const cplx& th : theta)
        phase += mass * (std::cosh(th) * x[0] - std::sinh(th) * x[1]);
      for (const cplx& et : eta)
        phase -= mass * (std::cosh(et) * x[0] - std::sinh(et) * x[1]);
      std::vector<cplx> ts(theta.size()), es(eta.size());
      for (size_t i = 0; i < theta.size(); ++i) ts[i] = theta[i] - lambda;
      for (size_t j = 0; j < eta.size(); ++j) es[j] = eta[j] - lambda;
      cplx v = std::exp(iu * phase);
      if (inner) v *= inner(ts, es);
      return v;
    };
    out.terms.push_back(std::move(t));
  }
  return out;
}

DeltaKernel attach_contraction(const ScatteringFunction& S, const Contraction& C,
                               const DeltaKernel& inner, cplx coeff, bool with_rc,
                               bool swap_inner_args) {
  const auto freeL = C.free_left();
  const auto freeR = C.free_right();
  const int expect_m = swap_inner_args ? static_cast<int>(freeR.size())
                                       : static_cast<int>(freeL.size());
  const int expect_n = swap_inner_args ? static_cast<int>(freeL.size())
                                       : static_cast<int>(freeR.size());
  if (inner.m != expect_m || inner.n != expect_n)
    throw PreconditionError("attach_contraction: inner kernel arity mismatch");

  DeltaKernel out{C.m, C.n, {}};
  for (const auto& term : inner.terms) {
    DKTerm t;
    t.coeff = coeff * term.coeff;
    for (const auto& [l, r] : C.pairs) t.pairs.push_back({l, r - C.m});
    for (const auto& [i, j] : term.pairs) {
      if (!swap_inner_args)
        t.pairs.push_back({freeL[i], freeR[j] - C.m});
      else
        // inner takes (eta-hat, theta-hat): its pair (i,j) identifies
        // eta_{freeR[i]} with theta_{freeL[j]}
        t.pairs.push_back({freeL[j], freeR[i] - C.m});
    }
    const KernelFn ipref = term.pref;
    const ScatteringFunction Sc = S;
    const Contraction Cc = C;
    const auto fl = freeL, fr = freeR;
    const bool rc = with_rc, swap = swap_inner_args;
    t.pref = [ipref, Sc, Cc, fl, fr, rc, swap](std::span<const cplx> theta,
                                               std::span<const cplx> eta) {
      cplx v = s_c(Sc, Cc, theta, eta);
      if (rc) v *= r_c(Sc, Cc, theta, eta, /*require_support=*/false);
      if (ipref) {
        std::vector<cplx> th(fl.size()), eh(fr.size());
        for (size_t i = 0; i < fl.size(); ++i) th[i] = theta[fl[i]];
        for (size_t j = 0; j < fr.size(); ++j) eh[j] = eta[fr[j] - Cc.m];
        v *= swap ? ipref(eh, th) : ipref(th, eh);
      }
      return v;
    };
    out.terms.push_back(std::move(t));
  }
  return out;
}

DeltaKernel sym_sym_kernel(const ScatteringFunction& S, int m, int n, KernelFn g) {
  DeltaKernel out{m, n, {}};
  const auto pis = all_permutations(m);
  const auto taus = all_permutations(n);
  const double normalization =
      1.0 / (static_cast<double>(factorial(m)) * static_cast<double>(factorial(n)));
  for (const auto& pi : pis) {
    for (const auto& tau : taus) {
      DKTerm t;
      t.coeff = normalization;
      const ScatteringFunction Sc = S;
      const Permutation pi_c = pi, tau_c = tau;
      const KernelFn gc = g;
      t.pref = [Sc, pi_c, tau_c, gc](std::span<const cplx> theta,
                                     std::span<const cplx> eta) {
        const auto tp = pi_c.permute(theta);
        const auto ep = tau_c.permute(eta);
        return s_sigma(Sc, pi_c, theta) * s_sigma(Sc, tau_c, eta) * gc(tp, ep);
      };
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace zf
