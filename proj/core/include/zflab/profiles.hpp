#ifndef ZFLAB_PROFILES_HPP
#define ZFLAB_PROFILES_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "zflab/common.hpp"

namespace zf {

// Momentum-space profile g~(p), evaluable at complex p. `compact_support`
// distinguishes the transform of a true bump (support radius r in position
// space) from the Gaussian surrogate (rapid decay only, radius nominal).
class Profile1D {
 public:
  static Profile1D gaussian(double radius, double width_scale = 0.35);
  static Profile1D bump_transform(double radius, int quad_nodes = 200);

  cplx operator()(cplx p) const { return eval_(p); }
  double radius() const { return radius_; }
  bool compact_support() const { return compact_; }
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
  double radius_ = 1.0;
  bool compact_ = false;
  std::function<cplx(cplx)> eval_;
};

// Smooth compactly supported 2D profile scaled into a disc; Fourier
// components f^{+-}(zeta) = (1/2pi) int d^2x f(x) e^{+- i p(zeta).x}
// computed by tensor Gauss-Legendre quadrature over the support box.
class Bump2D {
 public:
  Bump2D(std::array<double, 2> center, double radius, double mass,
         int quad_nodes = 96);

  double operator()(double x0, double x1) const;  // position space
  // sign=+1: f^+, sign=-1: f^-
  cplx fourier(cplx zeta, int sign) const;
  // derivative d^l/dzeta^l of the rapidity-space transform, l in {0,1}
  cplx fourier_derivative(cplx zeta, int sign, int ell) const;

  double radius() const { return radius_; }
  double mass() const { return mass_; }
  const std::array<double, 2>& center() const { return center_; }

 private:
  std::array<double, 2> center_;
  double radius_;
  double mass_;
  std::vector<double> nodes_, weights_;  // 1D rule over [-radius, radius]
  std::vector<double> values_;           // f on the tensor grid
};

}  // namespace zf

#endif
