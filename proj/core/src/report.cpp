#include "zflab/report.hpp"

#include <json.hpp>

namespace zf {

using json = nlohmann::ordered_json;

Check make_check(const std::string& name, const std::string& identity,
                 double max_residual, double tol, long samples,
                 std::uint64_t seed) {
  Check c;
  c.name = name;
  c.identity = identity;
  c.max_residual = max_residual;
  c.tol = tol;
  c.samples = samples;
  c.seed = seed;
  c.passed = max_residual <= tol;
  return c;
}

std::string CheckReport::to_json(bool pretty) const {
  json root;
  root["suite"] = suite;
  root["passed"] = all_passed();
  json env = json::object();
  for (const auto& [k, v] : environment) env[k] = v;
  root["environment"] = env;
  json arr = json::array();
  for (const auto& c : checks) {
    json jc;
    jc["name"] = c.name;
    jc["identity"] = c.identity;
    jc["passed"] = c.passed;
    jc["max_residual"] = c.max_residual;
    jc["tol"] = c.tol;
    if (!c.rule.empty()) jc["rule"] = c.rule;
    jc["samples"] = c.samples;
    jc["seed"] = c.seed;
    if (!c.values.empty()) {
      json jv = json::object();
      for (const auto& [k, v] : c.values) jv[k] = v;
      jc["values"] = jv;
    }
    if (!c.note.empty()) jc["note"] = c.note;
    jc["runtime_ms"] = c.runtime_ms;
    arr.push_back(jc);
  }
  root["checks"] = arr;
  return pretty ? root.dump(2) : root.dump();
}

}  // namespace zf
