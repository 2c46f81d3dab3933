#ifndef ZFLAB_WICK_HPP
#define ZFLAB_WICK_HPP

#include <vector>

#include "zflab/common.hpp"
#include "zflab/kernels.hpp"
#include "zflab/scattering.hpp"

namespace zf {

// Finite normal-ordered expansion  A = sum_t (1/(m_t! n_t!)) int g_t zdag^m z^n.
struct ExpansionTerm {
  int m = 0;
  int n = 0;
  KernelFn g;
};

struct OperatorExpansion {
  std::vector<ExpansionTerm> terms;

  static OperatorExpansion monomial(int m, int n, KernelFn g) {
    OperatorExpansion a;
    a.terms.push_back({m, n, std::move(g)});
    return a;
  }
  std::vector<std::pair<int, int>> arities() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& t : terms) {
      const std::pair<int, int> p{t.m, t.n};
      bool seen = false;
      for (const auto& q : out) seen = seen || q == p;
      if (!seen) out.push_back(p);
    }
    return out;
  }
};

// variable reference into the free-variable space of a DeltaKernel
struct VarRef {
  bool is_eta = false;
  int idx = 0;
};

// One generator with a symbolic point argument.
struct WickOp {
  bool creator = false;
  int var = 0;
};

// A complete contraction scheme produced by the ZF normal-ordering
// reduction: delta pairs (annihilator var, creator var) and exchange factors
// S(x_a - x_b), one entry per factor.
struct RawWickTerm {
  std::vector<std::pair<int, int>> deltas;
  std::vector<std::pair<int, int>> sfactors;
};

// <Omega| word |Omega> via z(x) z+(y) = S(y-x) z+(y) z(x) + delta(x-y).
std::vector<RawWickTerm> zf_reduce_vacuum(const std::vector<WickOp>& word,
                                          long term_cap = 200000);

// Assemble one delta-kernel term from a contraction scheme: variable ids
// [0, n_free) are the free variables described by refs; ids [alpha0,
// alpha0+mterm) and [alpha0+mterm, alpha0+mterm+nterm) are the integration
// slots of the expansion kernel g. extra_sfactors lets callers append
// exchange phases collected outside the reduction.
DKTerm assemble_wick_term(const ScatteringFunction& S,
                          const std::vector<VarRef>& refs, int alpha0, int mterm,
                          int nterm, const KernelFn& g, cplx coeff,
                          const RawWickTerm& raw,
                          const std::vector<std::pair<int, int>>& extra_sfactors = {});

// <l(left)| A |r(right)> as a DeltaKernel on the (full_m, full_n) space.
DeltaKernel wick_block_element(const ScatteringFunction& S,
                               const OperatorExpansion& A,
                               const std::vector<VarRef>& left_vars,
                               const std::vector<VarRef>& right_vars, int full_m,
                               int full_n, long term_cap = 200000);

}  // namespace zf

#endif
