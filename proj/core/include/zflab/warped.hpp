#ifndef ZFLAB_WARPED_HPP
#define ZFLAB_WARPED_HPP

#include <array>
#include <functional>

#include "zflab/araki.hpp"
#include "zflab/fock.hpp"
#include "zflab/report.hpp"
#include "zflab/wick.hpp"

namespace zf {

// The one-parameter family of Minkowski-skew 2x2 matrices,
// Q = -(a / 2 mu^2) [[0,1],[1,0]]; deforming the free field with it yields
// the exponential scattering function S(theta) = e^{i a sinh theta}.
struct QMatrix {
  double a = 0.0;
  double mass = 1.0;

  std::array<double, 2> apply(const std::array<double, 2>& p) const {
    const double f = -0.5 * a / (mass * mass);
    return {f * p[1], f * p[0]};
  }
};

inline double minkowski_dot(const std::array<double, 2>& x,
                            const std::array<double, 2>& y) {
  return x[0] * y[0] - x[1] * y[1];
}

inline std::array<double, 2> on_shell_momentum(double mass, double theta) {
  return {mass * std::cosh(theta), mass * std::sinh(theta)};
}

// A grid operator together with its momentum transfer (translations rephase
// it by e^{i phi . x}). The base action lives on the undeformed free space.
struct HomogeneousOp {
  std::function<FockVector(const FockVector&)> base;
  std::array<double, 2> transfer{0.0, 0.0};
};

// point-kernel creators/annihilators on the free space (S = 1 symmetrization)
HomogeneousOp point_creator(const FockSpace& free_space, int q);
HomogeneousOp point_annihilator(const FockSpace& free_space, int q);
HomogeneousOp compose_homogeneous(const HomogeneousOp& a, const HomogeneousOp& b);

// warped convolution on a homogeneous kernel: multiply the target vector by
// the phase e^{i phi_K . Q P} sector-wise, then apply the base action.
FockVector deform_apply(const FockSpace& free_space, const QMatrix& Q,
                        const HomogeneousOp& K, const FockVector& v);
// the deformed operator as a reusable homogeneous op (same transfer)
HomogeneousOp deformed_op(const FockSpace& free_space, const QMatrix& Q,
                          const HomogeneousOp& K);

// deformed commutator [A, B]_Q = AB - e^{2 i phi_A . Q phi_B} BA applied to a
// vector; A and B enter as the operators they are.
FockVector q_commutator_apply(const FockSpace& free_space, const QMatrix& Q,
                              const HomogeneousOp& A, const HomogeneousOp& B,
                              const FockVector& v);

// Q-matrix arithmetic, deformed CCR = ZF phases, commutator CCR form,
// anticommutativity, Leibniz, Jacobi, composition tau_Q tau_Q' = tau_{Q+Q'},
// homogeneity preservation.
CheckReport verify_q_algebra(const FockSpace& free_space, const QMatrix& Q,
                             int trials, std::uint64_t seed, double tol);

// Nested Q-commutator expression for the coefficients: the kernel
// <Omega, [z .. [z [A, z+]_Q .. z+]_Q ..]_Q Omega> computed symbolically with
// exchange phases e^{2 i p Q p} = S, compared weakly against f_{m,n}[A].
DeltaKernel nested_commutator_kernel(const ScatteringFunction& S,
                                     const OperatorExpansion& A, int m, int n);

Check verify_nested_commutator(const ScatteringFunction& S,
                               const OperatorExpansion& A, int m, int n,
                               const SmearBattery& battery, double tol);

}  // namespace zf

#endif
