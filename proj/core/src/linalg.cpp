#include "zflab/linalg.hpp"

#include <cmath>

namespace zf {

double largest_singular_value(const Mat& K, double rel_tol, int max_iter) {
  if (K.rows() == 0 || K.cols() == 0) return 0.0;
  if (!K.allFinite()) throw EvaluationError("largest_singular_value: non-finite entries");

  if (K.rows() * K.cols() <= 256 * 256 && std::min(K.rows(), K.cols()) <= 128) {
    Eigen::JacobiSVD<Mat> svd(K);
    return svd.singularValues()(0);
  }

  // power iteration on K^H K, deterministic start
  Vec v(K.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = cplx(1.0 + 1e-3 * std::sin(0.7 * static_cast<double>(i + 1)),
                1e-3 * std::cos(1.3 * static_cast<double>(i + 1)));
  v.normalize();

  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec w = K * v;
    const double norm_w = w.norm();
    if (norm_w == 0.0) return 0.0;
    v = K.adjoint() * w;
    const double norm_v = v.norm();
    const double sigma2 = norm_v;  // |K^H K v| with |v|=1 -> sigma_max^2 estimate
    v /= norm_v;
    const double sigma = std::sqrt(sigma2);
    if (it > 2 && std::abs(sigma - prev) <= rel_tol * std::max(1.0, sigma)) return sigma;
    prev = sigma;
  }
  return prev;
}

}  // namespace zf
