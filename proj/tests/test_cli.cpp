#include <doctest.h>

#include <regex>

#include "zflab/config.hpp"
#include "zflab/suites.hpp"

using namespace zf;

TEST_CASE("config parsing") {
  const Config cfg = Config::from_string(
      "grid.points = 12\n"
      "# a comment\n"
      "scattering.s = exponential:a=0.7  # trailing comment\n"
      "suite.seed = 99\n");
  CHECK(cfg.get_long("grid.points", 0) == 12);
  CHECK(cfg.get("scattering.s", "") == "exponential:a=0.7");
  CHECK(cfg.get_seed("suite.seed", 0) == 99);
  CHECK(cfg.get_double("missing.key", 2.5) == 2.5);
  CHECK_THROWS_AS(Config::from_string("not a pair\n"), ConfigError);
  CHECK_THROWS_AS(Config::from_string("grid.points = twelve\n").get_long("grid.points", 0),
                  ConfigError);
  CHECK_THROWS_AS(Config::from_file("/nonexistent/zflab.conf"), ConfigError);
}

TEST_CASE("suite options from config") {
  const Config cfg = Config::from_string(
      "grid.points=10\ngrid.min=-2\ngrid.max=2\nfock.nmax=2\nsuite.seed=7\n"
      "scattering.s=ising\n");
  const SuiteOptions opt = SuiteOptions::from_config(cfg);
  CHECK(opt.grid.n_points == 10);
  CHECK(opt.grid.theta_min == -2.0);
  CHECK(opt.nmax == 2);
  CHECK(opt.seed == 7);
  REQUIRE(opt.scattering.size() == 1);
  CHECK(opt.scattering[0] == "ising");
}

TEST_CASE("custom family loader") {
  const Config cfg = Config::from_string(
      "family.base=st\nprofile.kind=bump\nprofile.radius=1.0\nfamily.alpha=0.5\n");
  const FormFactorFamily fam = load_custom_family(cfg);
  CHECK(fam.name == "st");
  CHECK(fam.pole_hyperplanes);
  CHECK_THROWS_AS(load_custom_family(Config::from_string("family.base=unknown\n")),
                  ConfigError);
  CHECK_THROWS_AS(load_custom_family(Config::from_string(
                      "family.base=bs\nprofile.kind=spline\n")),
                  ConfigError);
}

TEST_CASE("unknown suite name is a configuration error") {
  SuiteOptions opt;
  CHECK_THROWS_AS(run_suite("nope", opt), ConfigError);
}

namespace {

std::string strip_runtime(std::string json) {
  // runtime fields are excluded from the determinism claim
  static const std::regex rt("\"runtime_ms\": [0-9.e+-]+");
  return std::regex_replace(json, rt, "\"runtime_ms\": X");
}

}  // namespace

TEST_CASE("suites are deterministic under a fixed seed") {
  SuiteOptions opt;
  opt.seed = 2024;
  opt.grid.n_points = 10;
  opt.nmax = 3;
  opt.trials = 2;
  opt.scattering = {"ising"};

  const CheckReport r1 = run_suite("algebra", opt);
  const CheckReport r2 = run_suite("algebra", opt);
  CHECK(strip_runtime(r1.to_json()) == strip_runtime(r2.to_json()));

  const CheckReport s1 = run_suite("summability", opt);
  const CheckReport s2 = run_suite("summability", opt);
  CHECK(strip_runtime(s1.to_json()) == strip_runtime(s2.to_json()));

  // a different seed changes residuals but not determinism
  SuiteOptions opt2 = opt;
  opt2.seed = 2025;
  const CheckReport r3 = run_suite("algebra", opt2);
  CHECK(strip_runtime(r1.to_json()) != strip_runtime(r3.to_json()));
}

TEST_CASE("every failing check carries its identity label") {
  SuiteOptions opt;
  opt.trials = 1;
  opt.grid.n_points = 8;
  opt.scattering = {"ising"};
  const CheckReport rep = run_suite("algebra", opt);
  for (const auto& c : rep.checks) {
    CHECK(!c.identity.empty());
    CHECK(!c.name.empty());
  }
}

TEST_CASE("JSON shape") {
  SuiteOptions opt;
  opt.trials = 1;
  opt.grid.n_points = 8;
  opt.scattering = {"free"};
  const CheckReport rep = run_suite("algebra", opt);
  const std::string json = rep.to_json();
  CHECK(json.find("\"suite\"") != std::string::npos);
  CHECK(json.find("\"checks\"") != std::string::npos);
  CHECK(json.find("\"max_residual\"") != std::string::npos);
  CHECK(json.find("\"environment\"") != std::string::npos);
}
