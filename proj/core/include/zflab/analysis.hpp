#ifndef ZFLAB_ANALYSIS_HPP
#define ZFLAB_ANALYSIS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zflab/common.hpp"
#include "zflab/kernels.hpp"
#include "zflab/profiles.hpp"
#include "zflab/report.hpp"

namespace zf {

// Sublinear growth-control function with analytic majorant. a/b constants
// are fitted unless supplied.
struct Indicatrix {
  std::string name = "zero";
  std::function<double(double)> omega = [](double) { return 0.0; };
  std::function<cplx(cplx)> varpi = [](cplx) { return cplx{0.0, 0.0}; };
  double param = 0.0;
  std::optional<double> a_omega;
  std::optional<double> b_omega;
  // closed-form value of int_P^inf omega(p)/(1+p^2) dp, if available
  std::function<double(double)> tail_bound;
};

// kind in {log: beta > 0, power: 0 < alpha < 1, zero}
Indicatrix builtin_indicatrix(const std::string& kind, double param = 0.0);
Indicatrix parse_indicatrix(const std::string& spec);  // "log:beta=2" etc.

// (w1) monotone, (w2) sublinear, (w3) integrability (quadrature with node
// doubling + analytic tail when available), (w4) boundary evenness of
// Re varpi, (w5) two-sided majorant with fitted or supplied (a,b).
CheckReport check_indicatrix(const Indicatrix& ind, int samples,
                             std::uint64_t seed, double tol);

// gamma_alpha(0) = 1, gamma_alpha(k) = Gamma(k/(2 alpha)) / (alpha Gamma(k/2))
double gamma_alpha(double alpha, int k);
double log_gamma_alpha(double alpha, int k);

struct SummabilityResult {
  std::vector<double> log_terms;   // log a_m, a_m = (sqrt2 d)^m sqrt(gamma_a(m)/m!)
  std::vector<double> ratios;      // a_{m+1}/a_m
  double stirling_exponent = 0.0;  // (1/alpha - 3)/2
  std::string verdict;             // convergent | divergent | marginal
};
SummabilityResult summability_test(double alpha, double c, double d, int m_max);

struct ClosabilityResult {
  std::vector<double> single_sum_terms;  // 2^{m/2}/sqrt(m!) (N(m,n)+N(n,m))
  std::vector<double> diagonal_terms;    // sum_{m+n=k} 2^{(m+n)/2}/sqrt(m!n!) N(m,n)
  std::string verdict_single;
  std::string verdict_double;
};
ClosabilityResult closability_criterion(
    const std::function<double(int, int)>& norms, int n_fixed, int m_max);
// log-space variant for norm sequences that overflow double
ClosabilityResult closability_criterion_log(
    const std::function<double(int, int)>& log_norms, int n_fixed, int m_max);

// Largest singular value of the spacing-weighted discretized kernel
// (rows grid^m, cols grid^n); with a nonzero indicatrix the two
// energy-damped variants are averaged. Delta terms enter as exact
// sub-blocks.
double cross_norm_estimate(const DeltaKernel& K, const RapidityGrid& grid,
                           const Indicatrix& omega);
double cross_norm_estimate(const KernelFn& f, int m, int n,
                           const RapidityGrid& grid, const Indicatrix& omega);

// Paley-Wiener boundary-value check for a wedge-localized bump:
//  (i) f^-(theta + i pi) = f^+(theta) on a theta sample,
// (ii) strip shape bound with fitted c for l in {0,1},
// (iii) e^{-mu r cosh(theta) sin(lambda)} damping trend in lambda and r.
CheckReport paley_wiener_check(const Bump2D& f, double wedge_radius,
                               const Indicatrix& omega, int theta_samples,
                               double tol);

}  // namespace zf

#endif
