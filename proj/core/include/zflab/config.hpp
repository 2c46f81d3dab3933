#ifndef ZFLAB_CONFIG_HPP
#define ZFLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "zflab/formfactors.hpp"

namespace zf {

// Flat key=value configuration with dotted section prefixes
// (e.g. "grid.points=16"); '#' starts a comment. Flags override file values.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

// Custom form-factor family description: family.base = bs | st plus
// profile.kind/profile.radius/mass/radius/alpha overrides.
FormFactorFamily load_custom_family(const Config& cfg);

}  // namespace zf

#endif
