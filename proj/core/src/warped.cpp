#include "zflab/warped.hpp"

#include <cmath>

namespace zf {

HomogeneousOp point_creator(const FockSpace& free_space, int q) {
  HomogeneousOp op;
  std::vector<cplx> eq(free_space.gsize(), cplx{0.0, 0.0});
  eq[q] = 1.0;
  op.base = [&free_space, eq](const FockVector& v) { return free_space.create(eq, v); };
  op.transfer = on_shell_momentum(free_space.grid().mass, free_space.grid().point(q));
  return op;
}

HomogeneousOp point_annihilator(const FockSpace& free_space, int q) {
  HomogeneousOp op;
  std::vector<cplx> eq(free_space.gsize(), cplx{0.0, 0.0});
  eq[q] = 1.0;
  op.base = [&free_space, eq](const FockVector& v) {
    return free_space.annihilate(eq, v);
  };
  const auto p = on_shell_momentum(free_space.grid().mass, free_space.grid().point(q));
  op.transfer = {-p[0], -p[1]};
  return op;
}

HomogeneousOp compose_homogeneous(const HomogeneousOp& a, const HomogeneousOp& b) {
  HomogeneousOp op;
  op.base = [a, b](const FockVector& v) { return a.base(b.base(v)); };
  op.transfer = {a.transfer[0] + b.transfer[0], a.transfer[1] + b.transfer[1]};
  return op;
}

namespace {

FockVector phase_multiply(const FockSpace& space, const std::array<double, 2>& qphi,
                          const FockVector& v) {
  // multiply sector entries by e^{i qphi . P(x)} with P the total momentum
  FockVector out = v;
  const double mu = space.grid().mass;
  const int G = space.gsize();
  std::vector<cplx> single(G);
  for (int p = 0; p < G; ++p) {
    const double th = space.grid().point(p);
    single[p] = std::exp(iu * mu * (qphi[0] * std::cosh(th) - qphi[1] * std::sinh(th)));
  }
  int d[8];
  for (int n = 1; n < static_cast<int>(v.sectors.size()); ++n)
    for (long i = 0; i < static_cast<long>(v.sectors[n].size()); ++i) {
      space.decode(n, i, d);
      cplx f{1.0, 0.0};
      for (int k = 0; k < n; ++k) f *= single[d[k]];
      out.sectors[n][i] *= f;
    }
  return out;
}

FockVector lincomb(const FockVector& x, cplx alpha, const FockVector& y) {
  FockVector out = x;
  for (size_t n = 0; n < out.sectors.size(); ++n)
    for (size_t i = 0; i < out.sectors[n].size(); ++i)
      out.sectors[n][i] += alpha * y.sectors[n][i];
  return out;
}

}  // namespace

FockVector deform_apply(const FockSpace& free_space, const QMatrix& Q,
                        const HomogeneousOp& K, const FockVector& v) {
  // tau_Q(K) |v> = e^{i phi_K . Q P} K |v> on homogeneous kernels;
  // phi . Q P = -(Q phi) . P by Minkowski skewness
  const auto qphi = Q.apply(K.transfer);
  return K.base(phase_multiply(free_space, {-qphi[0], -qphi[1]}, v));
}

HomogeneousOp deformed_op(const FockSpace& free_space, const QMatrix& Q,
                          const HomogeneousOp& K) {
  HomogeneousOp op;
  op.transfer = K.transfer;  // deformation preserves the momentum transfer
  op.base = [&free_space, Q, K](const FockVector& v) {
    return deform_apply(free_space, Q, K, v);
  };
  return op;
}

FockVector q_commutator_apply(const FockSpace& free_space, const QMatrix& Q,
                              const HomogeneousOp& A, const HomogeneousOp& B,
                              const FockVector& v) {
  const FockVector ab = A.base(B.base(v));
  const FockVector ba = B.base(A.base(v));
  const double phase = 2.0 * minkowski_dot(A.transfer, Q.apply(B.transfer));
  (void)free_space;
  return lincomb(ab, -std::exp(iu * phase), ba);
}

CheckReport verify_q_algebra(const FockSpace& free_space, const QMatrix& Q,
                             int trials, std::uint64_t seed, double tol) {
  if (free_space.scattering().name() != "free")
    throw PreconditionError("verify_q_algebra: the base space must be the free one");
  CheckReport rep;
  rep.suite = "warped";
  rep.environment["a"] = std::to_string(Q.a);
  Rng rng = Rng::seeded(seed).derive("warped");
  const int G = free_space.gsize();
  const double mu = free_space.grid().mass;

  auto norm_diff = [&](const FockVector& x, const FockVector& y) {
    const FockVector d = lincomb(x, cplx{-1.0, 0.0}, y);
    return free_space.norm(d) / std::max({1.0, free_space.norm(x), free_space.norm(y)});
  };

  // Minkowski skewness of Q and the sinh pairing identity
  {
    double worst_skew = 0.0, worst_sinh = 0.0;
    for (int t = 0; t < trials; ++t) {
      const std::array<double, 2> x{rng.normal(), rng.normal()};
      const std::array<double, 2> y{rng.normal(), rng.normal()};
      worst_skew = std::max(worst_skew, std::abs(minkowski_dot(x, Q.apply(y)) +
                                                 minkowski_dot(Q.apply(x), y)));
      const double th = rng.uniform(-3.0, 3.0), et = rng.uniform(-3.0, 3.0);
      const double lhs = 2.0 * minkowski_dot(on_shell_momentum(mu, th),
                                             Q.apply(on_shell_momentum(mu, et)));
      worst_sinh = std::max(worst_sinh, std::abs(lhs - Q.a * std::sinh(th - et)));
    }
    rep.add(make_check("q.skew", "q.minkowski-skew", worst_skew, 1e-13, trials, seed));
    Check c = make_check("q.sinh-pairing", "q.momentum-pairing-is-sinh", worst_sinh,
                         1e-12, trials, seed);
    c.note = "2 p(th) . Q p(et) = +a sinh(th - et) in this metric convention";
    rep.add(c);
  }

  // deformed exchange phases equal the exponential scattering function
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const int p = rng.index(G), q = rng.index(G);
      const FockVector v = free_space.random_vector(rng, free_space.n_max() - 2);
      const auto zp = point_creator(free_space, p);
      const auto zq = point_creator(free_space, q);
      const FockVector lhs =
          deform_apply(free_space, Q, zp, deform_apply(free_space, Q, zq, v));
      FockVector rhs =
          deform_apply(free_space, Q, zq, deform_apply(free_space, Q, zp, v));
      const cplx s = std::exp(iu * Q.a * std::sinh(free_space.grid().point(p) -
                                                   free_space.grid().point(q)));
      for (auto& sec : rhs.sectors)
        for (auto& x : sec) x *= s;
      worst = std::max(worst, norm_diff(lhs, rhs));
    }
    rep.add(make_check("q.deformed-ccr-phase", "q.deformed-ccr-equals-zf", worst,
                       1e-13, trials, seed));
  }

  // CCR form of the Q-commutator: [z, z+]_Q = discrete delta, [z,z]_Q = 0
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const int p = rng.index(G), q = rng.index(G);
      const FockVector v = free_space.random_vector(rng, free_space.n_max() - 2);
      const auto zdag = deformed_op(free_space, Q, point_creator(free_space, p));
      const auto ann = deformed_op(free_space, Q, point_annihilator(free_space, q));
      const FockVector comm = q_commutator_apply(free_space, Q, ann, zdag, v);
      FockVector expected = v;
      const double delta_val = p == q ? free_space.delta() : 0.0;
      for (auto& sec : expected.sectors)
        for (auto& x : sec) x *= delta_val;
      worst = std::max(worst, norm_diff(comm, expected));

      const auto zdag2 = deformed_op(free_space, Q, point_creator(free_space, q));
      const FockVector zero1 = q_commutator_apply(free_space, Q, zdag, zdag2, v);
      const FockVector zero2 = q_commutator_apply(
          free_space, Q, ann,
          deformed_op(free_space, Q, point_annihilator(free_space, p)), v);
      worst = std::max(worst, free_space.norm(zero1));
      worst = std::max(worst, free_space.norm(zero2));
    }
    rep.add(make_check("q.ccr-form", "q.commutator-ccr-form", worst, 1e-12, trials,
                       seed));
  }

  // anticommutativity, Leibniz, Jacobi
  {
    double worst_anti = 0.0, worst_leib = 0.0, worst_jac = 0.0;
    for (int t = 0; t < trials; ++t) {
      const FockVector v = free_space.random_vector(rng, free_space.n_max() - 3);
      const auto A = deformed_op(free_space, Q, point_creator(free_space, rng.index(G)));
      const auto B =
          deformed_op(free_space, Q, point_annihilator(free_space, rng.index(G)));
      const auto C = compose_homogeneous(
          deformed_op(free_space, Q, point_creator(free_space, rng.index(G))),
          deformed_op(free_space, Q, point_annihilator(free_space, rng.index(G))));

      // [A,B]_Q = -e^{2i phi_A Q phi_B} [B,A]_Q
      {
        const FockVector lhs = q_commutator_apply(free_space, Q, A, B, v);
        FockVector rhs = q_commutator_apply(free_space, Q, B, A, v);
        const double ph = 2.0 * minkowski_dot(A.transfer, Q.apply(B.transfer));
        for (auto& sec : rhs.sectors)
          for (auto& x : sec) x *= -std::exp(iu * ph);
        worst_anti = std::max(worst_anti, norm_diff(lhs, rhs));
      }
      // [A, BC]_Q = [A,B]_Q C + e^{2i phi_A Q phi_B} B [A,C]_Q
      {
        const auto BC = compose_homogeneous(B, C);
        const FockVector lhs = q_commutator_apply(free_space, Q, A, BC, v);
        const FockVector cv = C.base(v);
        const FockVector piece1 = q_commutator_apply(free_space, Q, A, B, cv);
        FockVector piece2 = q_commutator_apply(free_space, Q, A, C, v);
        piece2 = B.base(piece2);
        const double ph = 2.0 * minkowski_dot(A.transfer, Q.apply(B.transfer));
        const FockVector rhs = lincomb(piece1, std::exp(iu * ph), piece2);
        worst_leib = std::max(worst_leib, norm_diff(lhs, rhs));
      }
      // Jacobi: sum over cyclic permutations of e^{-2i phi_A Q phi_C}[A,[B,C]_Q]_Q
      {
        auto nested = [&](const HomogeneousOp& X, const HomogeneousOp& Y,
                          const HomogeneousOp& Z) {
          // [X, [Y,Z]_Q]_Q = [X, YZ]_Q - e^{2i phi_Y Q phi_Z} [X, ZY]_Q
          const auto YZ = compose_homogeneous(Y, Z);
          const auto ZY = compose_homogeneous(Z, Y);
          const FockVector t1 = q_commutator_apply(free_space, Q, X, YZ, v);
          FockVector t2 = q_commutator_apply(free_space, Q, X, ZY, v);
          const double ph = 2.0 * minkowski_dot(Y.transfer, Q.apply(Z.transfer));
          FockVector out = lincomb(t1, -std::exp(iu * ph), t2);
          const double outer = -2.0 * minkowski_dot(X.transfer, Q.apply(Z.transfer));
          for (auto& sec : out.sectors)
            for (auto& x : sec) x *= std::exp(iu * outer);
          return out;
        };
        FockVector sum = nested(A, B, C);
        sum = lincomb(sum, cplx{1.0, 0.0}, nested(B, C, A));
        sum = lincomb(sum, cplx{1.0, 0.0}, nested(C, A, B));
        const double scale = std::max(1.0, free_space.norm(v));
        worst_jac = std::max(worst_jac, free_space.norm(sum) / scale);
      }
    }
    rep.add(make_check("q.anticommutativity", "q.deformed-anticommutativity",
                       worst_anti, tol, trials, seed));
    rep.add(make_check("q.leibniz", "q.deformed-leibniz-rule", worst_leib, tol,
                       trials, seed));
    rep.add(make_check("q.jacobi", "q.deformed-jacobi-identity", worst_jac, tol,
                       trials, seed));
  }

  // composition of deformations and preserved homogeneity
  {
    double worst_comp = 0.0, worst_hom = 0.0;
    const QMatrix Q2{0.37 * Q.a + 0.2, Q.mass};
    const QMatrix Qsum{Q.a + Q2.a, Q.mass};
    for (int t = 0; t < trials; ++t) {
      const FockVector v = free_space.random_vector(rng, free_space.n_max() - 1);
      const auto A = point_creator(free_space, rng.index(G));
      // tau_Q tau_Q2 = tau_{Q+Q2} on a homogeneous kernel
      HomogeneousOp deformed_once;
      deformed_once.transfer = A.transfer;
      deformed_once.base = [&](const FockVector& w) {
        return deform_apply(free_space, Q2, A, w);
      };
      const FockVector lhs = deform_apply(free_space, Q, deformed_once, v);
      const FockVector rhs = deform_apply(free_space, Qsum, A, v);
      worst_comp = std::max(worst_comp, norm_diff(lhs, rhs));

      // unchanged momentum transfer: U(x) tau_Q(A) U(x)^* = e^{i phi x} tau_Q(A)
      const std::array<double, 2> x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const FockVector ux =
          free_space.apply_poincare(x, 0.0,
                                    deform_apply(free_space, Q, A,
                                                 free_space.apply_poincare(
                                                     {-x[0], -x[1]}, 0.0, v)));
      FockVector phased = deform_apply(free_space, Q, A, v);
      const double phi_x = A.transfer[0] * x[0] - A.transfer[1] * x[1];
      for (auto& sec : phased.sectors)
        for (auto& y : sec) y *= std::exp(iu * phi_x);
      worst_hom = std::max(worst_hom, norm_diff(ux, phased));
    }
    rep.add(make_check("q.composition", "q.deformation-composition", worst_comp,
                       1e-12, trials, seed));
    rep.add(make_check("q.homogeneity", "q.homogeneity-preserved", worst_hom, 1e-12,
                       trials, seed));
  }
  return rep;
}

DeltaKernel nested_commutator_kernel(const ScatteringFunction& S,
                                     const OperatorExpansion& A, int m, int n) {
  DeltaKernel result{m, n, {}};
  std::vector<VarRef> refs;
  for (int i = 0; i < m; ++i) refs.push_back({false, i});
  for (int j = 0; j < n; ++j) refs.push_back({true, j});

  for (const auto& term : A.terms) {
    const int alpha0 = m + n;
    const int beta0 = alpha0 + term.m;

    struct NTerm {
      double sign;
      std::vector<std::pair<int, int>> phases;  // S(x_a - x_b) factors
      std::vector<WickOp> word;
    };
    std::vector<NTerm> current;
    {
      NTerm start;
      start.sign = 1.0;
      for (int t = 0; t < term.m; ++t) start.word.push_back({true, alpha0 + t});
      for (int u = 0; u < term.n; ++u) start.word.push_back({false, beta0 + u});
      current.push_back(std::move(start));
    }

    // innermost [. , z+(eta_n)]_Q first, eta_1 outermost
    for (int j = n - 1; j >= 0; --j) {
      const int v = m + j;  // global id of eta_j
      std::vector<NTerm> next;
      for (const auto& t : current) {
        NTerm right = t;  // X z+(v)
        right.word.push_back({true, v});
        next.push_back(std::move(right));

        NTerm left = t;  // - e^{2i phi_X Q p(v)} z+(v) X
        left.sign = -left.sign;
        for (const auto& op : t.word)
          left.phases.push_back(op.creator ? std::pair<int, int>{op.var, v}
                                           : std::pair<int, int>{v, op.var});
        left.word.insert(left.word.begin(), {true, v});
        next.push_back(std::move(left));
      }
      current = std::move(next);
    }
    // then [z(theta_1), .]_Q innermost, theta_m outermost
    for (int i = 0; i < m; ++i) {
      const int u = i;  // global id of theta_i
      std::vector<NTerm> next;
      for (const auto& t : current) {
        NTerm left = t;  // z(u) X
        left.word.insert(left.word.begin(), {false, u});
        next.push_back(std::move(left));

        NTerm right = t;  // - e^{2i p(u) Q phi_X} X z(u)
        right.sign = -right.sign;
        for (const auto& op : t.word)
          right.phases.push_back(op.creator ? std::pair<int, int>{u, op.var}
                                            : std::pair<int, int>{op.var, u});
        right.word.push_back({false, u});
        next.push_back(std::move(right));
      }
      current = std::move(next);
    }

    const double norm = 1.0 / (static_cast<double>(factorial(term.m)) *
                               static_cast<double>(factorial(term.n)));
    for (const auto& t : current) {
      for (const auto& raw : zf_reduce_vacuum(t.word))
        result.terms.push_back(assemble_wick_term(S, refs, alpha0, term.m, term.n,
                                                  term.g, cplx{t.sign * norm, 0.0},
                                                  raw, t.phases));
    }
  }
  return result;
}

Check verify_nested_commutator(const ScatteringFunction& S,
                               const OperatorExpansion& A, int m, int n,
                               const SmearBattery& battery, double tol) {
  const DeltaKernel nested = nested_commutator_kernel(S, A, m, n);
  const DeltaKernel coeffs = contracted_coefficients(S, A, m, n);
  const double dist = weak_distance(nested, coeffs, battery);
  return make_check("warped.nested-commutator(m=" + std::to_string(m) +
                        ",n=" + std::to_string(n) + ")",
                    "warped.nested-commutator-coefficients", dist, tol,
                    static_cast<long>(battery.functions.size()));
}

}  // namespace zf
