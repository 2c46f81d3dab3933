#include "zflab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zf {

namespace {

// Overflow guard for the exponential family: |sinh| grows like e^{|Re z|},
// and exp(i a sinh z) saturates double range near |Re z| ~ 700/a. Rejecting
// early keeps downstream bound fits from digesting silently saturated values.
constexpr double kMaxAbsRe = 50.0;

cplx exponential_eval(double a, cplx zeta) {
  if (std::abs(zeta.real()) > kMaxAbsRe) {
    std::ostringstream os;
    os << "exponential scattering function: |Re zeta| = "
       << std::abs(zeta.real()) << " exceeds the evaluation guard " << kMaxAbsRe;
    throw EvaluationError(os.str());
  }
  return std::exp(iu * a * std::sinh(zeta));
}

}  // namespace

std::string ScatteringFunction::spec_string() const {
  if (name_ == "exponential") {
    std::ostringstream os;
    os << "exponential:a=" << params_.at("a");
    return os.str();
  }
  return name_;
}

ScatteringFunction builtin_scattering(const std::string& name,
                                      const std::map<std::string, double>& params) {
  if (name == "free") {
    return ScatteringFunction("free", {}, [](cplx) { return cplx{1.0, 0.0}; });
  }
  if (name == "ising") {
    return ScatteringFunction("ising", {}, [](cplx) { return cplx{-1.0, 0.0}; });
  }
  if (name == "exponential") {
    auto it = params.find("a");
    if (it == params.end())
      throw ConfigError("exponential scattering function requires parameter a");
    const double a = it->second;
    if (!(a >= 0.0))
      throw ConfigError("exponential scattering function requires a >= 0");
    return ScatteringFunction("exponential", {{"a", a}},
                              [a](cplx z) { return exponential_eval(a, z); });
  }
  throw ConfigError("unknown scattering function: " + name);
}

ScatteringFunction parse_scattering(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::istringstream is(rest);
    std::string item;
    while (std::getline(is, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ConfigError("bad scattering parameter '" + item + "' in '" + spec + "'");
      params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
  }
  return builtin_scattering(name, params);
}

Check check_defining_relations(const ScatteringFunction& S,
                               const std::vector<double>& sample, double tol) {
  if (sample.empty()) throw PreconditionError("check_defining_relations: empty sample");
  if (!(tol > 0.0)) throw PreconditionError("check_defining_relations: tol must be > 0");

  double worst = 0.0;
  long failures = 0;
  for (const double t : sample) {
    try {
      const cplx s = S(cplx{t, 0.0});
      const cplx a = S(cplx{t, pi});
      const cplx b = 1.0 / s;
      const cplx c = S(cplx{-t, 0.0});
      const cplx d = std::conj(s);
      const double r = std::max({std::abs(a - b), std::abs(b - c),
                                 std::abs(c - d), std::abs(std::abs(s) - 1.0)});
      worst = std::max(worst, r);
    } catch (const EvaluationError&) {
      ++failures;
    }
  }
  Check c = make_check("scattering.defining-relations." + S.name(),
                       "scattering.crossing-unitarity", worst, tol,
                       static_cast<long>(sample.size()));
  if (failures > 0) {
    c.passed = false;
    c.values["evaluation_failures"] = static_cast<double>(failures);
    c.note = "per-point evaluation failures recorded";
  }
  return c;
}

}  // namespace zf
