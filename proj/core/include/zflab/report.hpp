#ifndef ZFLAB_REPORT_HPP
#define ZFLAB_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace zf {

// One verified identity/bound. `identity` is a stable label naming the
// relation being checked (e.g. "zf.exchange-relation"); a failing check is
// always reportable by that label. For inequality-type checks, `rule`
// documents the pass criterion instead of residual<=tol.
struct Check {
  std::string name;
  std::string identity;
  bool passed = false;
  double max_residual = 0.0;
  double tol = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;
  std::string rule;                       // empty means "max_residual <= tol"
  std::map<std::string, double> values;   // named scalar diagnostics
  std::string note;
};

struct CheckReport {
  std::string suite;
  std::vector<Check> checks;
  std::map<std::string, std::string> environment;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void add(Check c) { checks.push_back(std::move(c)); }
  void merge(const CheckReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }

  // Deterministic JSON (runtime fields excluded from the determinism claim).
  std::string to_json(bool pretty = true) const;
};

// Convenience constructor for residual-type checks.
Check make_check(const std::string& name, const std::string& identity,
                 double max_residual, double tol, long samples = 0,
                 std::uint64_t seed = 0);

}  // namespace zf

#endif
