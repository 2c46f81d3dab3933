#include "zflab/profiles.hpp"

#include <cmath>

#include "zflab/quadrature.hpp"

namespace zf {

namespace {

double bump_value(double u) {  // supported on |u| < 1
  const double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

}  // namespace

Profile1D Profile1D::gaussian(double radius, double width_scale) {
  Profile1D p;
  p.kind_ = "gaussian";
  p.radius_ = radius;
  p.compact_ = false;
  const double w = width_scale * radius;
  p.eval_ = [w](cplx q) { return std::exp(-0.5 * w * w * q * q); };
  return p;
}

Profile1D Profile1D::bump_transform(double radius, int quad_nodes) {
  Profile1D p;
  p.kind_ = "bump";
  p.radius_ = radius;
  p.compact_ = true;
  const GaussRule rule = gauss_legendre(quad_nodes, -radius, radius);
  std::vector<double> gv(quad_nodes);
  for (int i = 0; i < quad_nodes; ++i) gv[i] = bump_value(rule.nodes[i] / radius);
  const auto nodes = rule.nodes;
  const auto weights = rule.weights;
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  p.eval_ = [nodes, weights, gv, norm](cplx q) {
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < nodes.size(); ++i)
      acc += weights[i] * gv[i] * std::exp(iu * q * nodes[i]);
    return norm * acc;
  };
  return p;
}

Bump2D::Bump2D(std::array<double, 2> center, double radius, double mass,
               int quad_nodes)
    : center_(center), radius_(radius), mass_(mass) {
  const GaussRule rule = gauss_legendre(quad_nodes, -radius, radius);
  nodes_ = rule.nodes;
  weights_ = rule.weights;
  values_.resize(static_cast<size_t>(quad_nodes) * quad_nodes);
  for (int i = 0; i < quad_nodes; ++i)
    for (int j = 0; j < quad_nodes; ++j) {
      const double u2 = (sqr(nodes_[i]) + sqr(nodes_[j])) / sqr(radius_);
      values_[i * quad_nodes + j] = u2 < 1.0 ? std::exp(-1.0 / (1.0 - u2)) : 0.0;
    }
}

double Bump2D::operator()(double x0, double x1) const {
  const double u2 = (sqr(x0 - center_[0]) + sqr(x1 - center_[1])) / sqr(radius_);
  return u2 < 1.0 ? std::exp(-1.0 / (1.0 - u2)) : 0.0;
}

cplx Bump2D::fourier(cplx zeta, int sign) const { return fourier_derivative(zeta, sign, 0); }

cplx Bump2D::fourier_derivative(cplx zeta, int sign, int ell) const {
  // p(zeta).x = mass (cosh(zeta) x0 - sinh(zeta) x1)
  const cplx ch = std::cosh(zeta), sh = std::sinh(zeta);
  const double s = static_cast<double>(sign);
  const int n = static_cast<int>(nodes_.size());
  cplx acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const double x0 = center_[0] + nodes_[i];
    for (int j = 0; j < n; ++j) {
      const double v = values_[i * n + j];
      if (v == 0.0) continue;
      const double x1 = center_[1] + nodes_[j];
      const cplx expo = iu * s * mass_ * (ch * x0 - sh * x1);
      cplx term = weights_[i] * weights_[j] * v * std::exp(expo);
      if (ell == 1) term *= iu * s * mass_ * (sh * x0 - ch * x1);
      acc += term;
    }
  }
  return acc / (2.0 * pi);
}

}  // namespace zf
