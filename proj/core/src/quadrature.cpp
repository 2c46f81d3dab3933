#include "zflab/quadrature.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace zf {

namespace {

// Newton iteration on Legendre polynomials for the [-1,1] rule.
GaussRule gauss_legendre_unit(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& cached_unit_rule(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre_unit(n)).first;
  return it->second;
}

}  // namespace

GaussRule gauss_legendre(int n, double a, double b) {
  const GaussRule& unit = cached_unit_rule(n);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * unit.nodes[i];
    rule.weights[i] = half * unit.weights[i];
  }
  return rule;
}

cplx integrate_gl(const std::function<cplx(double)>& f, double a, double b, int n) {
  const GaussRule rule = gauss_legendre(n, a, b);
  cplx sum{0.0, 0.0};
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

cplx contour_mean(const std::function<cplx(cplx)>& f, cplx center, double rho, int n) {
  // (1/2 pi i) \oint f dw = (rho / n) sum_k e^{i t_k} f(center + rho e^{i t_k})
  cplx sum{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * pi * k / n;
    const cplx e{std::cos(t), std::sin(t)};
    sum += e * f(center + rho * e);
  }
  return rho * sum / static_cast<double>(n);
}

cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double rho,
                     int n, double rel_tol, double abs_floor) {
  const cplx coarse = contour_mean(f, center, rho, n);
  const cplx fine = contour_mean(f, center, rho, 2 * n);
  const double diff = std::abs(fine - coarse);
  if (std::abs(fine) <= abs_floor && std::abs(coarse) <= abs_floor)
    return fine;  // residue indistinguishable from zero
  const double scale = std::max(std::abs(fine), abs_floor);
  if (diff > rel_tol * scale) {
    std::ostringstream os;
    os << "contour_residue: node doubling did not converge (|" << coarse << " - "
       << fine << "| = " << diff << ", scale " << scale << ")";
    throw AccuracyError(os.str());
  }
  return fine;
}

}  // namespace zf
