#ifndef ZFLAB_ARAKI_HPP
#define ZFLAB_ARAKI_HPP

#include <array>
#include <vector>

#include "zflab/fock.hpp"
#include "zflab/kernels.hpp"
#include "zflab/report.hpp"
#include "zflab/wick.hpp"

namespace zf {

inline constexpr int kDefaultArityCap = 6;  // m+n cap for coefficient arities

// <l(theta)| A |r(eta)> as a delta-kernel (normal-ordering rewrite).
DeltaKernel wick_matrix_element(const ScatteringFunction& S,
                                const OperatorExpansion& A, int m, int n);

// <l_C(theta)| A |r_C(eta)> on the full (m,n) variable space.
DeltaKernel wick_matrix_element_contracted(const ScatteringFunction& S,
                                           const OperatorExpansion& A,
                                           const Contraction& C);

// f_{m,n}[A] = sum_C (-1)^{|C|} delta_C S_C <l_C|A|r_C>
DeltaKernel contracted_coefficients(const ScatteringFunction& S,
                                    const OperatorExpansion& A, int m, int n);

// <l(theta)|A|r(eta)> weakly equals sum_C delta_C S_C f_{m-|C|,n-|C|}[A]
Check verify_inversion(const ScatteringFunction& S, const OperatorExpansion& A,
                       int m, int n, const SmearBattery& battery, double tol);

// (i) S-symmetry of the coefficients in each variable group;
// (ii) coefficients of U(x,l) A U(x,l)^* equal the phase-and-shift transform.
CheckReport verify_symmetry_and_poincare(
    const ScatteringFunction& S, const OperatorExpansion& A, int m, int n,
    const std::vector<std::pair<std::array<double, 2>, double>>& transforms,
    double mass, const SmearBattery& battery, std::uint64_t seed, double tol);

// f_{m,n}[J A* J] weakly equals
// sum_C (-1)^{|C|} delta_C S_C R_C f_{n-|C|,m-|C|}[A](eta-hat, theta-hat).
Check verify_reflection(const ScatteringFunction& S, const OperatorExpansion& A,
                        int m, int n, const SmearBattery& battery, double tol);

// Apply the expansion as a grid operator.
FockVector apply_expansion(const FockSpace& space, const OperatorExpansion& A,
                           const FockVector& v);

// [A, phi'(g)] via coefficient kernels with B insertions, validated on the
// grid against the direct commutator.
Check verify_commutator_expansion(const FockSpace& space, const OperatorExpansion& A,
                                  const std::vector<cplx>& gplus,
                                  const std::vector<cplx>& gminus, int trials,
                                  std::uint64_t seed, double tol);

// Grid matrix elements of A vs its reconstruction from the coefficients
// (expansion -> coefficients -> operator round trip).
Check verify_roundtrip(const FockSpace& space, const OperatorExpansion& A,
                       int max_m, int max_n, int trials, std::uint64_t seed,
                       double tol);

// Finiteness of the coefficient cross norm (bound-type check).
Check check_coefficient_norm_finite(const ScatteringFunction& S,
                                    const OperatorExpansion& A, int m, int n,
                                    const RapidityGrid& grid, double ceiling);

}  // namespace zf

#endif
