#ifndef ZFLAB_RNG_HPP
#define ZFLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "zflab/common.hpp"

namespace zf {

// Deterministic RNG stream. Doubles are produced directly from the raw
// 64-bit output so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  }

  // heavy-tailed symmetric draw (Cauchy-like), used by supremum samplers
  double cauchy(double scale) {
    return scale * std::tan(pi * (uniform() - 0.5));
  }

  int index(int n) { return static_cast<int>(bits() % static_cast<std::uint64_t>(n)); }

  cplx complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }

  // Derive an independent, reproducible substream for a named task.
  Rng derive(std::string_view name) const {
    std::uint64_t h = 1469598103934665603ull ^ seed_tag_;
    for (const char c : name) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    Rng r(h);
    r.seed_tag_ = h;
    return r;
  }

  static Rng seeded(std::uint64_t seed) {
    Rng r(seed ^ 0x9e3779b97f4a7c15ull);
    r.seed_tag_ = seed;
    return r;
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_tag_ = 0;
};

}  // namespace zf

#endif
