#include "zflab/wick.hpp"

#include <algorithm>

namespace zf {

namespace {

// ZF reduction: z(x) z+(y) = S(y-x) z+(y) z(x) + delta(x-y). Every nonzero
// vacuum term is a complete contraction scheme; branches where an operator
// survives against the vacuum are dropped.
void reduce(std::vector<WickOp>& word, RawWickTerm& current,
            std::vector<RawWickTerm>& out, long term_cap) {
  if (word.empty()) {
    if (static_cast<long>(out.size()) >= term_cap)
      throw ResourceError("wick reduction: term cap exceeded");
    out.push_back(current);
    return;
  }
  if (word.front().creator) return;   // <Omega| z^dag ... = 0
  if (!word.back().creator) return;   // ... z |Omega> = 0

  size_t i = 0;
  while (i + 1 < word.size() && !(!word[i].creator && word[i + 1].creator)) ++i;

  const int x = word[i].var;
  const int y = word[i + 1].var;

  {
    std::vector<WickOp> rest;
    rest.reserve(word.size() - 2);
    for (size_t k = 0; k < word.size(); ++k)
      if (k != i && k != i + 1) rest.push_back(word[k]);
    current.deltas.push_back({x, y});
    reduce(rest, current, out, term_cap);
    current.deltas.pop_back();
  }
  {
    std::vector<WickOp> swapped = word;
    std::swap(swapped[i], swapped[i + 1]);
    current.sfactors.push_back({y, x});
    reduce(swapped, current, out, term_cap);
    current.sfactors.pop_back();
  }
}

}  // namespace

std::vector<RawWickTerm> zf_reduce_vacuum(const std::vector<WickOp>& word,
                                          long term_cap) {
  std::vector<RawWickTerm> out;
  RawWickTerm scratch;
  std::vector<WickOp> w = word;
  reduce(w, scratch, out, term_cap);
  return out;
}

DKTerm assemble_wick_term(const ScatteringFunction& S,
                          const std::vector<VarRef>& refs, int alpha0, int mterm,
                          int nterm, const KernelFn& g, cplx coeff,
                          const RawWickTerm& raw,
                          const std::vector<std::pair<int, int>>& extra_sfactors) {
  const int nvars = alpha0 + mterm + nterm;
  std::vector<int> sub(nvars, -1);
  for (int i = 0; i < alpha0; ++i) sub[i] = i;

  std::vector<std::pair<int, int>> free_deltas;
  for (const auto& [a, b] : raw.deltas) {
    const bool a_free = a < alpha0;
    const bool b_free = b < alpha0;
    if (a_free && b_free) {
      free_deltas.push_back({a, b});
    } else if (a_free) {
      sub[b] = a;  // integration creator := free annihilator variable
    } else if (b_free) {
      sub[a] = b;  // integration annihilator := free creator variable
    } else {
      throw EvaluationError("wick reduction: internal contraction between "
                            "integration variables");
    }
  }
  for (int v = alpha0; v < nvars; ++v)
    if (sub[v] < 0)
      throw EvaluationError("wick reduction: unresolved integration variable");

  auto to_ref = [&](int var) -> VarRef { return refs[sub[var]]; };

  DKTerm dk;
  dk.coeff = coeff;
  for (const auto& [a, b] : free_deltas) {
    const VarRef ra = to_ref(a), rb = to_ref(b);
    if (ra.is_eta == rb.is_eta)
      throw EvaluationError("wick reduction: delta pair within one variable group");
    const VarRef th = ra.is_eta ? rb : ra;
    const VarRef et = ra.is_eta ? ra : rb;
    dk.pairs.push_back({th.idx, et.idx});
  }

  std::vector<std::pair<VarRef, VarRef>> srefs;
  srefs.reserve(raw.sfactors.size() + extra_sfactors.size());
  for (const auto& [a, b] : raw.sfactors) srefs.push_back({to_ref(a), to_ref(b)});
  for (const auto& [a, b] : extra_sfactors) srefs.push_back({to_ref(a), to_ref(b)});

  std::vector<VarRef> slots;
  slots.reserve(mterm + nterm);
  for (int t = 0; t < mterm + nterm; ++t) slots.push_back(to_ref(alpha0 + t));

  const ScatteringFunction Sc = S;
  const KernelFn gc = g;
  const int gm = mterm;
  dk.pref = [Sc, gc, gm, srefs, slots](std::span<const cplx> theta,
                                       std::span<const cplx> eta) {
    auto value = [&](const VarRef& r) { return r.is_eta ? eta[r.idx] : theta[r.idx]; };
    cplx v{1.0, 0.0};
    for (const auto& [a, b] : srefs) v *= Sc(value(a) - value(b));
    if (gc) {
      std::vector<cplx> args(slots.size());
      for (size_t k = 0; k < slots.size(); ++k) args[k] = value(slots[k]);
      v *= gc(std::span<const cplx>(args.data(), gm),
              std::span<const cplx>(args.data() + gm, args.size() - gm));
    }
    return v;
  };
  return dk;
}

DeltaKernel wick_block_element(const ScatteringFunction& S,
                               const OperatorExpansion& A,
                               const std::vector<VarRef>& left_vars,
                               const std::vector<VarRef>& right_vars, int full_m,
                               int full_n, long term_cap) {
  DeltaKernel result{full_m, full_n, {}};
  const int nl = static_cast<int>(left_vars.size());
  const int nr = static_cast<int>(right_vars.size());
  std::vector<VarRef> refs = left_vars;
  refs.insert(refs.end(), right_vars.begin(), right_vars.end());

  for (const auto& term : A.terms) {
    const int alpha0 = nl + nr;
    const int beta0 = alpha0 + term.m;

    std::vector<WickOp> word;
    word.reserve(beta0 + term.n);
    for (int i = nl - 1; i >= 0; --i) word.push_back({false, i});
    for (int t = 0; t < term.m; ++t) word.push_back({true, alpha0 + t});
    for (int u = 0; u < term.n; ++u) word.push_back({false, beta0 + u});
    for (int j = nr - 1; j >= 0; --j) word.push_back({true, nl + j});

    const cplx norm{1.0 / (static_cast<double>(factorial(term.m)) *
                           static_cast<double>(factorial(term.n))),
                    0.0};
    for (const auto& raw : zf_reduce_vacuum(word, term_cap))
      result.terms.push_back(
          assemble_wick_term(S, refs, alpha0, term.m, term.n, term.g, norm, raw));
  }
  return result;
}

}  // namespace zf
