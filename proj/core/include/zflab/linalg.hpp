#ifndef ZFLAB_LINALG_HPP
#define ZFLAB_LINALG_HPP

#include <Eigen/Dense>

#include "zflab/common.hpp"

namespace zf {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Largest singular value. Power iteration on K^H K with a deterministic
// start vector; small matrices are cross-checked against a direct SVD.
double largest_singular_value(const Mat& K, double rel_tol = 1e-13,
                              int max_iter = 20000);

}  // namespace zf

#endif
