#ifndef ZFLAB_COMMON_HPP
#define ZFLAB_COMMON_HPP

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zf {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iu{0.0, 1.0};

// Configuration error: bad user input (unknown name, out-of-range parameter).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violated by a caller (arity mismatch, off-support request).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation failed at a specific point (pole proximity, overflow guard).
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical method did not reach its accuracy target.
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured resource cap (memory, term count) was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double sqr(double x) { return x * x; }

}  // namespace zf

#endif
