#ifndef ZFLAB_COMBINATORICS_HPP
#define ZFLAB_COMBINATORICS_HPP

#include <functional>
#include <span>
#include <vector>

#include "zflab/common.hpp"
#include "zflab/scattering.hpp"

namespace zf {

// Permutation of {0..n-1} in one-line notation: images[i] = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n) : images_(n) {
    for (int i = 0; i < n; ++i) images_[i] = i;
  }
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n) { return Permutation(n); }
  static Permutation transposition(int n, int a, int b);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  // (sigma o rho)(i) = sigma(rho(i))
  Permutation then_after(const Permutation& rho) const;
  Permutation inverse() const;

  long inversions() const;
  int sign() const { return inversions() % 2 == 0 ? 1 : -1; }

  // theta^sigma = (theta_{sigma(0)}, ..., theta_{sigma(n-1)})
  template <typename T>
  std::vector<T> permute(std::span<const T> v) const {
    std::vector<T> out(v.size());
    for (int i = 0; i < degree(); ++i) out[i] = v[images_[i]];
    return out;
  }
  std::vector<cplx> permute(const std::vector<cplx>& v) const {
    return permute(std::span<const cplx>(v));
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

std::vector<Permutation> all_permutations(int n);
Permutation random_permutation(int n, class Rng& rng);

// S^sigma(theta) = prod_{i<j, sigma(i)>sigma(j)} S(theta_{sigma(i)} - theta_{sigma(j)})
cplx s_sigma(const ScatteringFunction& S, const Permutation& sigma,
             std::span<const cplx> theta);

// Sym_S f(theta) = (1/n!) sum_sigma S^sigma(theta) f(theta^sigma)
cplx sym_s(const ScatteringFunction& S,
           const std::function<cplx(std::span<const cplx>)>& f,
           std::span<const cplx> theta);

// A contraction pairs left indices in [0,m) with right indices in [m,m+n).
// Canonical storage order: ascending right index.
struct Contraction {
  int m = 0;
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // (l, r) with 0<=l<m<=r<m+n

  int size() const { return static_cast<int>(pairs.size()); }
  void canonicalize();
  bool is_canonical() const;
  bool left_contracted(int l) const;
  bool right_contracted(int r) const;  // r is global, in [m, m+n)
  std::vector<int> free_left() const;    // ascending
  std::vector<int> free_right() const;   // ascending, global indices
  bool operator==(const Contraction&) const = default;
};

// All contractions in canonical form; count = sum_k C(m,k) C(n,k) k!.
std::vector<Contraction> enumerate_contractions(int m, int n);
// Streaming variant for large m+n (counts grow factorially).
void for_each_contraction(int m, int n,
                          const std::function<void(const Contraction&)>& fn);
long count_contractions(int m, int n);  // closed form

// Delta support: theta_{l_j} == eta_{r_j - m} for every pair.
bool on_delta_support(const Contraction& C, std::span<const cplx> theta,
                      std::span<const cplx> eta, double tol = 1e-9);

// S_C evaluated literally from its defining double product.
cplx s_c(const ScatteringFunction& S, const Contraction& C,
         std::span<const cplx> theta, std::span<const cplx> eta);

// R_C = prod_j (1 - prod_p S^{(m)}_{l_j,p}); an off-support request is a
// precondition error unless require_support is disabled.
cplx r_c(const ScatteringFunction& S, const Contraction& C,
         std::span<const cplx> theta, std::span<const cplx> eta,
         bool require_support = true);

// The permutations (sigma in S_m, rho in S_n) with
// delta_C S_C = delta_C S^sigma(theta) S^rho(eta).
std::pair<Permutation, Permutation> contraction_permutations(const Contraction& C);

// Bundled evaluation of all the factors a contraction carries. R_C is only
// meaningful on the delta support; requesting it off support throws.
struct ContractionFactors {
  cplx s_c;
  cplx r_c;
  Permutation sigma;
  Permutation rho;
};
ContractionFactors contraction_factors(const ScatteringFunction& S,
                                       const Contraction& C,
                                       std::span<const cplx> theta,
                                       std::span<const cplx> eta,
                                       bool want_rc = true);

// C^J = (n, m, {(r_j - m, l_j + n)})
Contraction reflect_contraction(const Contraction& C);

// C in C_{m,n}, C2 in C_{m-|C|, n-|C|} (indices of C2 refer to the surviving
// slots of C and are renumbered internally).
Contraction compose_contractions(const Contraction& C, const Contraction& C2);

// A pairing of {0..m-1}: disjoint pairs (l<r), plus one leftover index when
// m is odd. The sign does not depend on the order in which pairs are stored.
struct Pairing {
  int m = 0;
  std::vector<std::pair<int, int>> pairs;
  int leftover = -1;

  int sign() const;
};

std::vector<Pairing> enumerate_pairings(int m);
long count_pairings(int m);  // m! / (2^k k!) with k = floor(m/2)

long factorial(int n);
long binomial(int n, int k);

}  // namespace zf

#endif
