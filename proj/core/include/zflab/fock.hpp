#ifndef ZFLAB_FOCK_HPP
#define ZFLAB_FOCK_HPP

#include <array>
#include <functional>
#include <vector>

#include "zflab/combinatorics.hpp"
#include "zflab/common.hpp"
#include "zflab/report.hpp"
#include "zflab/rng.hpp"
#include "zflab/scattering.hpp"

namespace zf {

// Uniform rapidity grid. The discrete delta is 1/spacing at coincident grid
// points; integrals are spacing-weighted sums.
struct RapidityGrid {
  double theta_min = -3.0;
  double theta_max = 3.0;
  int n_points = 16;
  double mass = 1.0;

  double spacing() const { return (theta_max - theta_min) / (n_points - 1); }
  double point(int i) const { return theta_min + spacing() * i; }
  // p(theta) . x  with  x = (x0, x1),  p = mass (cosh, sinh)
  double p_dot(int i, const std::array<double, 2>& x) const {
    const double t = point(i);
    return mass * (std::cosh(t) * x[0] - std::sinh(t) * x[1]);
  }
  std::vector<double> points() const {
    std::vector<double> out(n_points);
    for (int i = 0; i < n_points; ++i) out[i] = point(i);
    return out;
  }
};

// Truncated vector in the S-symmetric Fock space over the grid. Sector n is
// a flat row-major array over grid^n. `truncated` flags that a creation
// dropped weight above the cutoff.
struct FockVector {
  int n_points = 0;
  int n_max = 0;
  std::vector<std::vector<cplx>> sectors;
  bool truncated = false;

  static FockVector vacuum(int n_points, int n_max);
  std::vector<cplx>& sector(int n) { return sectors[n]; }
  const std::vector<cplx>& sector(int n) const { return sectors[n]; }
};

using OmegaFn = std::function<double(double)>;  // indicatrix omega(p)

// A grid operator as an action plus its adjoint with respect to the
// spacing-weighted Fock inner product.
struct GridOperator {
  std::function<FockVector(const FockVector&)> apply;
  std::function<FockVector(const FockVector&)> apply_adjoint;
};

// Context: scattering function + grid + truncation. All operator actions are
// pure; the cached S table only depends on (S, grid).
class FockSpace {
 public:
  FockSpace(ScatteringFunction S, RapidityGrid grid, int n_max);

  const RapidityGrid& grid() const { return grid_; }
  const ScatteringFunction& scattering() const { return S_; }
  int n_max() const { return n_max_; }
  int gsize() const { return grid_.n_points; }
  double delta() const { return grid_.spacing(); }
  cplx s_table(int p, int q) const { return stab_[p * gsize() + q]; }

  cplx inner(const FockVector& a, const FockVector& b) const;
  double norm(const FockVector& v) const;

  // Discrete P^S_n applied to one sector array.
  std::vector<cplx> project_s_symmetric(int n, const std::vector<cplx>& in) const;
  FockVector project_s_symmetric(const FockVector& v) const;

  FockVector random_vector(Rng& rng, int top_sector = -1) const;

  // z^dagger(f), z(f) for a single-particle grid array f.
  FockVector create(const std::vector<cplx>& f, const FockVector& v) const;
  FockVector annihilate(const std::vector<cplx>& f, const FockVector& v) const;

  // z^{dagger a} z^b (K) with K given on grid^{a+b} (theta block first).
  FockVector apply_zdagz(const std::vector<cplx>& K, int a, int b,
                         const FockVector& v) const;

  // Same with a diagonal multiplication operator inserted between the
  // creator and annihilator blocks; mid(k, digits) receives the spectator
  // variables of the intermediate sector.
  using MidFn = std::function<cplx(int, const int*)>;
  FockVector apply_zdagz_mid(const std::vector<cplx>& K, int a, int b,
                             const MidFn& mid, const FockVector& v) const;

  // U(x, lambda): translation phases are exact; the boost must be an integer
  // multiple of the grid spacing (grid shift), otherwise a precondition
  // error names the constraint.
  FockVector apply_poincare(const std::array<double, 2>& x, double lambda,
                            const FockVector& v) const;
  FockVector apply_reflection(const FockVector& v) const;  // J

  FockVector apply_energy_damp(const OmegaFn& omega, const FockVector& v,
                               double sign = -1.0) const;  // e^{sign*omega(H/mu)}
  FockVector truncate(int k, const FockVector& v) const;   // Q_k

  // phi(f) = z^dagger(f+) + z(f-); phi'(f) = J phi(conj f+, conj f-) J.
  GridOperator field(const std::vector<cplx>& fplus,
                     const std::vector<cplx>& fminus) const;
  GridOperator primed_field(const std::vector<cplx>& fplus,
                            const std::vector<cplx>& fminus) const;

  // B^{g,theta_q}: diagonal multiplication by g(theta_q) prod_j S(theta_q - theta_j)
  FockVector apply_b_operator(const std::vector<cplx>& g, int q,
                              const FockVector& v) const;
  FockVector apply_b_operator_adjoint(const std::vector<cplx>& g, int q,
                                      const FockVector& v) const;

  // primed annihilator/creator  z(g)' = J z(g) J,  z^dagger(g)' = J z^dagger(g) J
  FockVector apply_primed_annihilate(const std::vector<cplx>& g,
                                     const FockVector& v) const;
  FockVector apply_primed_create(const std::vector<cplx>& g,
                                 const FockVector& v) const;

  double energy_sum(int n, long flat) const;  // E(theta_x), dimensionless

  // index helpers
  long sector_size(int n) const { return powG_[n]; }
  void decode(int n, long flat, int* digits) const;
  long encode(int n, const int* digits) const;

 private:
  ScatteringFunction S_;
  RapidityGrid grid_;
  int n_max_;
  std::vector<cplx> stab_;
  std::vector<long> powG_;
};

// Smeared Zamolodchikov relation check on random vectors and smearing
// functions; the delta term appears as the grid inner product.
CheckReport check_zf_relations(const FockSpace& space, int trials,
                               std::uint64_t seed, double tol);

// Commutation relations of the primed operators with B insertions:
// the single relation, the exchange relation, and the m=2 string version.
CheckReport check_primed_commutators(const FockSpace& space, int trials,
                                     std::uint64_t seed, double tol);

// (1/2)|Q_k A e^{-omega(H/mu)} Q_k| + (1/2)|Q_k e^{-omega(H/mu)} A Q_k|,
// operator norm on the S-symmetric truncated space (weighted power iteration).
double qform_norm(const FockSpace& space, const GridOperator& A, int k,
                  const OmegaFn& omega);

// Inequality check of the creation/annihilation norm bounds
//   |e^{omega} z#(f) e^{-omega} Q_l|  <=  sqrt(l+1) |f|_2^omega  (creator)
//   |e^{omega} z(f)  e^{-omega} Q_l|  <=  sqrt(l)   |f|_2        (annihilator)
CheckReport check_zdag_norm_bound(const FockSpace& space, const OmegaFn& omega,
                                  const std::vector<cplx>& f, int ell);

}  // namespace zf

#endif
