#ifndef ZFLAB_KERNELS_HPP
#define ZFLAB_KERNELS_HPP

#include <functional>
#include <span>
#include <vector>

#include "zflab/combinatorics.hpp"
#include "zflab/common.hpp"
#include "zflab/fock.hpp"
#include "zflab/rng.hpp"
#include "zflab/scattering.hpp"

namespace zf {

using KernelFn = std::function<cplx(std::span<const cplx>, std::span<const cplx>)>;

// One term of a formal delta-kernel: a pattern of delta pairs identifying
// left variable theta_i with right variable eta_j, times a smooth prefactor.
// Within a term the theta indices are pairwise distinct, as are the eta ones.
struct DKTerm {
  std::vector<std::pair<int, int>> pairs;  // (theta index, eta index)
  cplx coeff{1.0, 0.0};
  KernelFn pref;  // null means the constant 1
};

// Formal sum of delta-pattern terms; represents a distribution in
// (theta_1..theta_m, eta_1..eta_n). Deltas are kept structural so that
// delta_C * S_C products stay exact.
struct DeltaKernel {
  int m = 0;
  int n = 0;
  std::vector<DKTerm> terms;

  static DeltaKernel zero(int m, int n) { return DeltaKernel{m, n, {}}; }
  static DeltaKernel plain(int m, int n, KernelFn f, cplx coeff = {1.0, 0.0});
  void append(const DeltaKernel& other);
};

// Separable test function battery on a grid: battery[b][v] is the grid array
// for variable v; the first m entries smear theta, the last n smear eta.
struct SmearBattery {
  RapidityGrid grid;
  int m = 0;
  int n = 0;
  std::vector<std::vector<std::vector<cplx>>> functions;

  static SmearBattery make(const RapidityGrid& grid, int m, int n, int count,
                           std::uint64_t seed);
};

// integral of K against prod_i g_i(theta_i) prod_j h_j(eta_j) on the grid;
// each delta pair collapses one integration (discrete delta = 1/spacing).
cplx smear(const DeltaKernel& K, const RapidityGrid& grid,
           std::span<const std::vector<cplx>> gs,
           std::span<const std::vector<cplx>> hs);

// max_b |<K1-K2, battery_b>| / scale, scale = max(1, max_b |<Ki, battery_b>|)
double weak_distance(const DeltaKernel& k1, const DeltaKernel& k2,
                     const SmearBattery& battery);

// K evaluated entrywise on grid^(m+n); delta pairs contribute 1/spacing at
// coincident indices (exact sub-blocks).
std::vector<cplx> evaluate_on_grid(const DeltaKernel& K, const RapidityGrid& grid);

// K'(theta,eta) = S^pi(theta) S^tau(eta) K(theta^pi, eta^tau)
DeltaKernel permute_kernel(const ScatteringFunction& S, const DeltaKernel& K,
                           const Permutation& pi, const Permutation& tau);

// K'(theta,eta) = exp(i sum p(theta).x - i sum p(eta).x) K(theta-l, eta-l)
DeltaKernel poincare_transform_kernel(const DeltaKernel& K, double mass,
                                      const std::array<double, 2>& x, double lambda);

// delta_C S_C (theta,eta) x inner(theta-hat, eta-hat), with optional extra
// scalar factor such as R_C; inner indices are renumbered through C's
// surviving slots. swap_inner_args: inner takes (eta-hat, theta-hat) instead.
DeltaKernel attach_contraction(const ScatteringFunction& S, const Contraction& C,
                               const DeltaKernel& inner, cplx coeff,
                               bool with_rc = false, bool swap_inner_args = false);

// Sym_{S,theta} Sym_{S,eta} g as an explicit sum over permutation pairs.
DeltaKernel sym_sym_kernel(const ScatteringFunction& S, int m, int n, KernelFn g);

}  // namespace zf

#endif
