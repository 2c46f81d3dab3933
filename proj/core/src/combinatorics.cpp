#include "zflab/combinatorics.hpp"

#include <algorithm>
#include <numeric>

#include "zflab/rng.hpp"

namespace zf {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (const int v : images_) {
    if (v < 0 || v >= degree() || seen[v])
      throw PreconditionError("Permutation: images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::transposition(int n, int a, int b) {
  Permutation p(n);
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

Permutation Permutation::then_after(const Permutation& rho) const {
  if (degree() != rho.degree())
    throw PreconditionError("Permutation composition: degree mismatch");
  std::vector<int> img(degree());
  for (int i = 0; i < degree(); ++i) img[i] = images_[rho(i)];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(degree());
  for (int i = 0; i < degree(); ++i) img[images_[i]] = i;
  return Permutation(std::move(img));
}

long Permutation::inversions() const {
  long count = 0;
  for (int i = 0; i < degree(); ++i)
    for (int j = i + 1; j < degree(); ++j)
      if (images_[i] > images_[j]) ++count;
  return count;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(img[i], img[rng.index(i + 1)]);
  return Permutation(std::move(img));
}

cplx s_sigma(const ScatteringFunction& S, const Permutation& sigma,
             std::span<const cplx> theta) {
  const int n = sigma.degree();
  if (static_cast<int>(theta.size()) != n)
    throw PreconditionError("s_sigma: arity mismatch");
  cplx prod{1.0, 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sigma(i) > sigma(j)) prod *= S(theta[sigma(i)] - theta[sigma(j)]);
  return prod;
}

cplx sym_s(const ScatteringFunction& S,
           const std::function<cplx(std::span<const cplx>)>& f,
           std::span<const cplx> theta) {
  const int n = static_cast<int>(theta.size());
  cplx sum{0.0, 0.0};
  long count = 0;
  for (const auto& sigma : all_permutations(n)) {
    const auto permuted = sigma.permute(theta);
    sum += s_sigma(S, sigma, theta) * f(permuted);
    ++count;
  }
  return sum / static_cast<double>(count);
}

void Contraction::canonicalize() {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
}

bool Contraction::is_canonical() const {
  for (size_t j = 1; j < pairs.size(); ++j)
    if (pairs[j - 1].second >= pairs[j].second) return false;
  return true;
}

bool Contraction::left_contracted(int l) const {
  for (const auto& [a, b] : pairs)
    if (a == l) return true;
  return false;
}

bool Contraction::right_contracted(int r) const {
  for (const auto& [a, b] : pairs)
    if (b == r) return true;
  return false;
}

std::vector<int> Contraction::free_left() const {
  std::vector<int> out;
  for (int l = 0; l < m; ++l)
    if (!left_contracted(l)) out.push_back(l);
  return out;
}

std::vector<int> Contraction::free_right() const {
  std::vector<int> out;
  for (int r = m; r < m + n; ++r)
    if (!right_contracted(r)) out.push_back(r);
  return out;
}

namespace {

void emit_contractions(int m, int n, int k,
                       const std::function<void(const Contraction&)>& fn) {
  // choose k right indices ascending, then all injections of left indices
  std::vector<int> rights(k), lefts(k);
  std::vector<bool> left_used(m, false);

  std::function<void(int, int)> assign_lefts;  // (pair slot, -)
  std::function<void(int, int)> choose_rights;

  Contraction c;
  c.m = m;
  c.n = n;
  c.pairs.resize(k);

  assign_lefts = [&](int slot, int) {
    if (slot == k) {
      for (int j = 0; j < k; ++j) c.pairs[j] = {lefts[j], rights[j]};
      fn(c);
      return;
    }
    for (int l = 0; l < m; ++l) {
      if (left_used[l]) continue;
      left_used[l] = true;
      lefts[slot] = l;
      assign_lefts(slot + 1, 0);
      left_used[l] = false;
    }
  };

  choose_rights = [&](int slot, int next) {
    if (slot == k) {
      assign_lefts(0, 0);
      return;
    }
    for (int r = next; r < m + n; ++r) {
      rights[slot] = r;
      choose_rights(slot + 1, r + 1);
    }
  };

  if (k == 0) {
    fn(c);
    return;
  }
  choose_rights(0, m);
}

}  // namespace

void for_each_contraction(int m, int n,
                          const std::function<void(const Contraction&)>& fn) {
  if (m < 0 || n < 0) throw PreconditionError("contractions: m,n must be >= 0");
  const int kmax = std::min(m, n);
  for (int k = 0; k <= kmax; ++k) emit_contractions(m, n, k, fn);
}

std::vector<Contraction> enumerate_contractions(int m, int n) {
  std::vector<Contraction> out;
  out.reserve(static_cast<size_t>(count_contractions(m, n)));
  for_each_contraction(m, n, [&](const Contraction& c) { out.push_back(c); });
  return out;
}

long count_contractions(int m, int n) {
  long total = 0;
  for (int k = 0; k <= std::min(m, n); ++k)
    total += binomial(m, k) * binomial(n, k) * factorial(k);
  return total;
}

bool on_delta_support(const Contraction& C, std::span<const cplx> theta,
                      std::span<const cplx> eta, double tol) {
  for (const auto& [l, r] : C.pairs)
    if (std::abs(theta[l] - eta[r - C.m]) > tol) return false;
  return true;
}

namespace {

// Concatenated argument lookup and the index-ordering flip S^{(m)}.
cplx s_factor_m(const ScatteringFunction& S, int m, int a, int b,
                std::span<const cplx> theta, std::span<const cplx> eta) {
  auto arg = [&](int idx) { return idx < m ? theta[idx] : eta[idx - m]; };
  const bool flip = (a < m) != (b < m);
  return flip ? S(arg(b) - arg(a)) : S(arg(a) - arg(b));
}

}  // namespace

cplx s_c(const ScatteringFunction& S, const Contraction& C,
         std::span<const cplx> theta, std::span<const cplx> eta) {
  if (static_cast<int>(theta.size()) != C.m || static_cast<int>(eta.size()) != C.n)
    throw PreconditionError("s_c: arity mismatch");
  Contraction canon = C;
  canon.canonicalize();
  cplx prod{1.0, 0.0};
  const int k = canon.size();
  for (int j = 0; j < k; ++j) {
    const auto [l, r] = canon.pairs[j];
    for (int p = l + 1; p < r; ++p) prod *= s_factor_m(S, C.m, p, l, theta, eta);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (canon.pairs[i].first < canon.pairs[j].first)
        prod *= s_factor_m(S, C.m, canon.pairs[j].first, canon.pairs[i].second,
                           theta, eta);
  return prod;
}

cplx r_c(const ScatteringFunction& S, const Contraction& C,
         std::span<const cplx> theta, std::span<const cplx> eta,
         bool require_support) {
  if (require_support && !on_delta_support(C, theta, eta))
    throw PreconditionError("r_c: arguments are not on the delta support");
  cplx prod{1.0, 0.0};
  for (const auto& [l, r] : C.pairs) {
    (void)r;
    cplx inner{1.0, 0.0};
    for (int p = 0; p < C.m + C.n; ++p)
      inner *= s_factor_m(S, C.m, l, p, theta, eta);
    prod *= (1.0 - inner);
  }
  return prod;
}

std::pair<Permutation, Permutation> contraction_permutations(const Contraction& C) {
  Contraction canon = C;
  canon.canonicalize();
  const int k = canon.size();

  std::vector<int> sig;
  sig.reserve(C.m);
  for (const int l : canon.free_left()) sig.push_back(l);
  for (int j = 0; j < k; ++j) sig.push_back(canon.pairs[j].first);

  std::vector<int> rho;
  rho.reserve(C.n);
  for (int j = k - 1; j >= 0; --j) rho.push_back(canon.pairs[j].second - C.m);
  for (const int r : canon.free_right()) rho.push_back(r - C.m);

  return {Permutation(std::move(sig)), Permutation(std::move(rho))};
}

ContractionFactors contraction_factors(const ScatteringFunction& S,
                                       const Contraction& C,
                                       std::span<const cplx> theta,
                                       std::span<const cplx> eta, bool want_rc) {
  ContractionFactors out;
  out.s_c = s_c(S, C, theta, eta);
  out.r_c = want_rc ? r_c(S, C, theta, eta) : cplx{0.0, 0.0};
  std::tie(out.sigma, out.rho) = contraction_permutations(C);
  return out;
}

Contraction reflect_contraction(const Contraction& C) {
  Contraction out;
  out.m = C.n;
  out.n = C.m;
  for (const auto& [l, r] : C.pairs) out.pairs.push_back({r - C.m, l + C.n});
  out.canonicalize();
  return out;
}

Contraction compose_contractions(const Contraction& C, const Contraction& C2) {
  if (C2.m != C.m - C.size() || C2.n != C.n - C.size())
    throw PreconditionError("compose_contractions: arity mismatch");
  const auto left_map = C.free_left();
  const auto right_map = C.free_right();
  Contraction out = C;
  for (const auto& [l, r] : C2.pairs)
    out.pairs.push_back({left_map[l], right_map[r - C2.m]});
  out.canonicalize();
  return out;
}

int Pairing::sign() const {
  std::vector<int> oneline;
  oneline.reserve(m);
  for (const auto& [l, r] : pairs) {
    oneline.push_back(l);
    oneline.push_back(r);
  }
  if (m % 2 == 1) oneline.push_back(leftover);
  return Permutation(std::move(oneline)).sign();
}

namespace {

void emit_pairings(std::vector<int>& remaining, bool leftover_free, Pairing& p,
                   std::vector<Pairing>& out) {
  if (remaining.empty()) {
    out.push_back(p);
    return;
  }
  const int i = remaining.front();
  if (leftover_free) {
    std::vector<int> rest(remaining.begin() + 1, remaining.end());
    p.leftover = i;
    emit_pairings(rest, false, p, out);
    p.leftover = -1;
  }
  for (size_t t = 1; t < remaining.size(); ++t) {
    const int j = remaining[t];
    std::vector<int> rest;
    for (size_t s = 1; s < remaining.size(); ++s)
      if (s != t) rest.push_back(remaining[s]);
    p.pairs.push_back({i, j});
    emit_pairings(rest, leftover_free, p, out);
    p.pairs.pop_back();
  }
}

}  // namespace

std::vector<Pairing> enumerate_pairings(int m) {
  if (m < 0) throw PreconditionError("enumerate_pairings: m must be >= 0");
  std::vector<int> indices(m);
  std::iota(indices.begin(), indices.end(), 0);
  Pairing p;
  p.m = m;
  std::vector<Pairing> out;
  emit_pairings(indices, m % 2 == 1, p, out);
  return out;
}

long count_pairings(int m) {
  const int k = m / 2;
  return factorial(m) / ((1L << k) * factorial(k));
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return num / den;
}

}  // namespace zf
