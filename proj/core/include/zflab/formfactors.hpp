#ifndef ZFLAB_FORMFACTORS_HPP
#define ZFLAB_FORMFACTORS_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zflab/analysis.hpp"
#include "zflab/common.hpp"
#include "zflab/profiles.hpp"
#include "zflab/report.hpp"
#include "zflab/rng.hpp"
#include "zflab/scattering.hpp"

namespace zf {

// ---- signed tanh-product sums ------------------------------------------

// T_m over pairings, evaluated through Pfaffian minors (fast path).
double t_m(std::span<const double> theta);
cplx t_m(std::span<const cplx> zeta, double pole_guard = 1e-6);
// rational form on the cube, x_j = tanh(theta_j / 2)
double t_m_rational(std::span<const double> x);
// direct enumeration over pairings; independent slow oracle
cplx t_m_by_pairings(std::span<const cplx> zeta);

struct TmSampleResult {
  int m = 0;
  long samples = 0;
  double max_abs = 0.0;
  std::vector<double> argmax;
  bool exceeded = false;          // max_abs > 1 + 1e-12
  double boundary_residual = 0.0; // |T_m|_{x_j=+-1} -+ T_{m-1}| worst case
};

// Mixed uniform boxes (R in {1,5,20}) and heavy-tailed draws; also samples
// the boundary reduction T_m|_{x_j = +-1} = +- T_{m-1}.
TmSampleResult sample_tm_bound(int m, long samples, std::uint64_t seed);

// d/dalpha log|T_m(alpha x)| against the closed-form sum, m <= 4;
// near-zero T_m samples are skipped and counted.
Check check_logderiv(int m, int samples, std::uint64_t seed, double tol);

// ---- residue extraction --------------------------------------------------

using MultiFn = std::function<cplx(std::span<const cplx>)>;

// Residue of F on the hyperplane zeta_j - zeta_i = i pi through the base
// point: circle integral in zeta_j around base_i + i pi, trapezoid nodes
// with doubling as the accuracy control.
cplx residue_on_hyperplane(const MultiFn& F, int i, int j,
                           std::span<const cplx> base, double rho = 0.1,
                           int nodes = 256, double rel_tol = 1e-8);

// ---- candidate local-operator families ------------------------------------

struct FormFactorFamily {
  std::string name;
  ScatteringFunction S;
  double mass = 1.0;
  double radius = 1.0;
  Profile1D profile;
  Indicatrix omega;                 // decay class used by the bound checks
  std::vector<int> active;          // k with F_k not identically zero
  bool pole_hyperplanes = false;    // first-order poles at zeta_n - zeta_m = i pi
  std::function<cplx(int, std::span<const cplx>)> F;

  bool is_active(int k) const {
    for (const int a : active)
      if (a == k) return true;
    return false;
  }
};

// F_2 = sinh((z1 - z2)/2) g~(mu E), all other F_k = 0 (S = ising).
FormFactorFamily family_buchholz_summers(Profile1D profile, double mass,
                                         double radius);
// F_{2k+1} = (2 pi i)^{-k} g~(mu E) T_{2k+1}, even F_k = 0 (S = ising only);
// alpha fixes the power-indicatrix decay class.
FormFactorFamily family_schroer_truong(Profile1D profile, double mass,
                                       double radius, double alpha);

// ---- node/offset lattice ---------------------------------------------------

// lambda^{(k,i)} for i in [0, 2k] (periodic extension beyond i = k)
std::vector<double> node_lambda(int k, int i);
// nu^{(k,j)} = (1, 2, ..., k-j, -j, ..., -2, -1)
std::vector<double> node_nu(int k, int j);

// ---- general-S building blocks ---------------------------------------------

// H_S(z) = (e^{z/2} + S(-z) e^{-z/2}) / (e^{z/2} + e^{-z/2})
cplx h_s(const ScatteringFunction& S, cplx zeta, double pole_guard = 1e-6);
// T_{S,m} for odd m (permutation sum with S^sigma weights)
cplx t_s_m(const ScatteringFunction& S, std::span<const cplx> zeta);

// symmetry/periodicity/residue of H_S (residue closed form 1 - S(0)),
// ising collapse H_S = tanh(z/2) and T_{S,m} = T_m, and the T_S residue
// identity with the factor -(1 - S(0)) prod S.
CheckReport check_general_s_blocks(const ScatteringFunction& S, int samples,
                                   std::uint64_t seed, double tol);

// extra factor conditions: permutation invariance, S-product shift
// covariance, restriction identity at the pole hyperplane.
using MsFamily = std::function<cplx(int, std::span<const cplx>)>;
CheckReport check_ms_conditions(const ScatteringFunction& S, const MsFamily& M,
                                int k_max, int samples, std::uint64_t seed,
                                double tol);

// ---- conditions (F) ---------------------------------------------------------

struct ConditionsFConfig {
  std::vector<int> ks{1, 3, 5};
  int samples = 24;
  std::uint64_t seed = 1;
  double tol_identity = 1e-8;    // F1-F4
  double node_offset = 1e-3;     // epsilon along nu^{(k,j)} for (F5)
  double norm_ceiling = 1e8;     // (F5) finiteness ceiling
  int grid_points_cap = 12;      // per-variable grid for (F5) norms
  double fit_slack = 0.15;       // (F6) holdout slack
};

CheckReport verify_conditions_F(const FormFactorFamily& fam,
                                const ConditionsFConfig& cfg);

// ---- wedge-locality contour shift -------------------------------------------

struct ContourShiftResult {
  double i_low_re, i_low_im;    // integral on Im xi = eps
  double i_high_re, i_high_im;  // integral on Im xi = pi - eps
  double discrepancy;           // |I_low - I_high| / scale
  double scale;
};

// Line integrals of K(xi) h(xi) at Im xi = eps and pi - eps; K from the
// family coefficients smeared with a Gaussian, h from a wedge-supported
// 2D bump. Node density scales with 1/sqrt(eps).
ContourShiftResult verify_contour_shift(const FormFactorFamily& fam, int m, int n,
                                        const Bump2D& g, double eps,
                                        double cutoff = 5.0, int base_panels = 220);

}  // namespace zf

#endif
