#ifndef ZFLAB_SUITES_HPP
#define ZFLAB_SUITES_HPP

#include <string>
#include <vector>

#include "zflab/config.hpp"
#include "zflab/report.hpp"

namespace zf {

// Runtime knobs for the named verification suites. Defaults are the
// desk-scale settings; every tolerance is pinned here.
struct SuiteOptions {
  std::uint64_t seed = 1;
  RapidityGrid grid{-3.0, 3.0, 16, 1.0};
  int nmax = 3;
  int trials = 4;
  std::vector<std::string> scattering{"free", "ising", "exponential:a=0.7"};
  double a = 0.7;                          // warped deformation parameter
  double alpha = 0.4;                      // summability exponent
  std::string indicatrix = "log:beta=2";   // analysis suite indicatrix
  long tm_samples = 20000;
  int tm_mmax = 11;
  double araki_tol = 1e-9;   // weak-equality tolerance for the araki suite
  int araki_mmax = 2;        // largest coefficient arity per side
  double summ_c = 1.0;       // summability norm model c d^m sqrt(gamma_a(m))
  double summ_d = 1.0;
  int summ_mmax = 300;
  std::string data_dir;                    // CSV output directory, optional
  const FormFactorFamily* custom_family = nullptr;

  static SuiteOptions from_config(const Config& cfg);
};

extern const std::vector<std::string> kSuiteNames;

// Deterministic under a fixed seed; throws ConfigError for unknown names.
CheckReport run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace zf

#endif
