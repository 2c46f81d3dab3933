#ifndef ZFLAB_QUADRATURE_HPP
#define ZFLAB_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "zflab/common.hpp"

namespace zf {

// Gauss-Legendre nodes/weights on [a,b].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double a, double b);

// integral of f over [a,b] with an n-point Gauss-Legendre rule
cplx integrate_gl(const std::function<cplx(double)>& f, double a, double b, int n);

// (1/2 pi i) * closed circle integral of f around `center` with radius rho,
// by the N-node trapezoid rule (geometric convergence for analytic f).
cplx contour_mean(const std::function<cplx(cplx)>& f, cplx center, double rho, int n);

// Residue of w -> f(w) at `center`: trapezoid circle integral with a doubled
// node count as accuracy control. Throws AccuracyError if the two estimates
// disagree beyond rel_tol (with an absolute floor for residues near zero).
cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double rho,
                     int n, double rel_tol, double abs_floor = 1e-10);

}  // namespace zf

#endif
