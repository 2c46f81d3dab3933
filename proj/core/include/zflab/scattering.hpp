#ifndef ZFLAB_SCATTERING_HPP
#define ZFLAB_SCATTERING_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zflab/common.hpp"
#include "zflab/report.hpp"

namespace zf {

// A scattering function: unimodular on the real line, crossing-symmetric on
// the strip 0 <= Im(zeta) <= pi, bounded there. Built-ins are entire, so
// poles_in_strip is empty for all of them. Evaluation is a pure closed form;
// no tabulation, so arbitrary complex arguments are allowed.
class ScatteringFunction {
 public:
  ScatteringFunction() = default;
  ScatteringFunction(std::string name, std::map<std::string, double> params,
                     std::function<cplx(cplx)> eval,
                     std::vector<cplx> poles_in_strip = {})
      : name_(std::move(name)),
        params_(std::move(params)),
        eval_(std::move(eval)),
        poles_(std::move(poles_in_strip)) {}

  cplx operator()(cplx zeta) const { return eval_(zeta); }

  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }
  const std::vector<cplx>& poles_in_strip() const { return poles_; }

  // S(0); relevant for the general-S building blocks, whose residue
  // identities carry a factor 1 - S(0).
  cplx at_zero() const { return eval_(cplx{0.0, 0.0}); }

  bool is_constant() const { return name_ == "free" || name_ == "ising"; }

  // CLI/config spelling: free | ising | exponential:a=<float>
  std::string spec_string() const;

 private:
  std::string name_ = "free";
  std::map<std::string, double> params_;
  std::function<cplx(cplx)> eval_ = [](cplx) { return cplx{1.0, 0.0}; };
  std::vector<cplx> poles_;
};

// name in {free, ising, exponential}; exponential needs a >= 0.
ScatteringFunction builtin_scattering(const std::string& name,
                                      const std::map<std::string, double>& params = {});

// Parse "free", "ising", "exponential:a=0.7".
ScatteringFunction parse_scattering(const std::string& spec);

// Pointwise verification of the defining relations
//   S(theta+i pi) = S(theta)^{-1} = S(-theta) = conj S(theta)
// plus unimodularity on the real line, over a real sample grid.
// Per-point evaluation failures are recorded, not thrown.
Check check_defining_relations(const ScatteringFunction& S,
                               const std::vector<double>& sample, double tol);

}  // namespace zf

#endif
