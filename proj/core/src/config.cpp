#include "zflab/config.hpp"

#include <fstream>
#include <sstream>

namespace zf {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line is not key=value: '" + line + "'");
    cfg.kv_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return from_string(os.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not a number: " + it->second);
  }
}

long Config::get_long(const std::string& key, long fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not an integer: " + it->second);
  }
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not a seed: " + it->second);
  }
}

FormFactorFamily load_custom_family(const Config& cfg) {
  const std::string base = cfg.get("family.base", "");
  const std::string kind = cfg.get("profile.kind", "bump");
  const double radius = cfg.get_double("family.radius", 1.0);
  const double mass = cfg.get_double("family.mass", 1.0);
  const double alpha = cfg.get_double("family.alpha", 0.5);
  const double profile_radius = cfg.get_double("profile.radius", radius);

  Profile1D profile = kind == "gaussian"
                          ? Profile1D::gaussian(profile_radius)
                          : Profile1D::bump_transform(profile_radius);
  if (kind != "gaussian" && kind != "bump")
    throw ConfigError("unknown profile.kind: " + kind);

  if (base == "bs") return family_buchholz_summers(profile, mass, radius);
  if (base == "st") return family_schroer_truong(profile, mass, radius, alpha);
  throw ConfigError("custom family needs family.base = bs or st");
}

}  // namespace zf
