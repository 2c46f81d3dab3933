// zflab: batch verification runner for the ZF-algebra/form-factor laboratory.
//
// Exit codes: 0 all checks passed, 1 at least one check failed,
// 2 configuration/usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "zflab/config.hpp"
#include "zflab/suites.hpp"

namespace {

struct CommonFlags {
  std::string config_file;
  std::string report_path;
  std::string data_dir;
  std::uint64_t seed = 1;
  double grid_min = -3.0, grid_max = 3.0, mass = 1.0;
  int grid_points = 16, nmax = 3, trials = 4;
  std::string s_spec;
  double alpha = 0.4, a = 0.7;
  double tol = 1e-9;
  int mmax = 0;
  std::string indicatrix;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_file, "flat key=value config file");
  cmd->add_option("--report", f.report_path, "write the JSON report here");
  cmd->add_option("--data-dir", f.data_dir, "directory for CSV data files");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--grid-min", f.grid_min, "rapidity grid lower edge");
  cmd->add_option("--grid-max", f.grid_max, "rapidity grid upper edge");
  cmd->add_option("--grid-points", f.grid_points, "rapidity grid points");
  cmd->add_option("--nmax", f.nmax, "Fock truncation");
  cmd->add_option("--mass", f.mass, "particle mass");
  cmd->add_option("--trials", f.trials, "random trials per check");
  cmd->add_option("--s", f.s_spec, "scattering function, e.g. exponential:a=0.7");
  cmd->add_option("--alpha", f.alpha, "summability exponent alpha");
  cmd->add_option("--a", f.a, "deformation parameter a");
  cmd->add_option("--tol", f.tol, "weak-equality tolerance (araki suite)");
  cmd->add_option("--mmax", f.mmax, "arity / term cap where applicable");
  cmd->add_option("--indicatrix", f.indicatrix,
                  "indicatrix spec, e.g. log:beta=2 or power:alpha=0.5");
}

zf::SuiteOptions build_options(const CLI::App* cmd, const CommonFlags& f) {
  zf::Config cfg;
  if (!f.config_file.empty()) cfg = zf::Config::from_file(f.config_file);
  zf::SuiteOptions opt = zf::SuiteOptions::from_config(cfg);
  auto overridden = [&](const std::string& flag) {
    return cmd->count(flag) > 0;
  };
  if (overridden("--seed")) opt.seed = f.seed;
  if (overridden("--grid-min")) opt.grid.theta_min = f.grid_min;
  if (overridden("--grid-max")) opt.grid.theta_max = f.grid_max;
  if (overridden("--grid-points")) opt.grid.n_points = f.grid_points;
  if (overridden("--mass")) opt.grid.mass = f.mass;
  if (overridden("--nmax")) opt.nmax = f.nmax;
  if (overridden("--trials")) opt.trials = f.trials;
  if (overridden("--s")) opt.scattering = {f.s_spec};
  if (overridden("--alpha")) opt.alpha = f.alpha;
  if (overridden("--a")) opt.a = f.a;
  if (overridden("--tol")) opt.araki_tol = f.tol;
  if (overridden("--mmax")) {
    opt.araki_mmax = f.mmax;
    opt.tm_mmax = f.mmax;
  }
  if (overridden("--indicatrix")) opt.indicatrix = f.indicatrix;
  if (overridden("--data-dir")) opt.data_dir = f.data_dir;
  return opt;
}

int emit(const zf::CheckReport& rep, const std::string& report_path) {
  const std::string json = rep.to_json();
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report to " << report_path << "\n";
      return 2;
    }
    out << json << "\n";
  }
  std::cout << json << "\n";
  long failed = 0;
  for (const auto& c : rep.checks)
    if (!c.passed) ++failed;
  std::cerr << rep.suite << ": " << rep.checks.size() - failed << "/"
            << rep.checks.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification suites for factorizing scattering models"};
  app.require_subcommand(1);

  // suite runner
  CommonFlags sf;
  std::string suite_name;
  CLI::App* suite = app.add_subcommand("suite", "run a named verification suite");
  suite->add_option("name", suite_name, "one of: algebra araki conditions-f "
                                        "conjecture-tm residues analysis "
                                        "summability warped all")
      ->required();
  add_common(suite, sf);

  // verify <module> alias (with the conditions-f custom family option)
  CommonFlags vf;
  std::string verify_name, family_spec = "builtin";
  std::vector<int> family_ks;
  CLI::App* verify = app.add_subcommand("verify", "alias of `suite` per module");
  verify->add_option("name", verify_name, "module suite name")->required();
  verify->add_option("--family", family_spec,
                     "conditions-f family: bs | st | custom:<file>");
  verify->add_option("--k", family_ks, "k values for conditions-f");
  CommonFlags* vfp = &vf;
  add_common(verify, *vfp);

  // conjecture tm
  CommonFlags cf;
  int tm_m = 11;
  long tm_samples = 100000;
  CLI::App* conjecture = app.add_subcommand("conjecture", "supremum samplers");
  CLI::App* tm = conjecture->add_subcommand("tm", "sample the |T_m| <= 1 bound");
  tm->add_option("--m", tm_m, "largest m (>= 2)");
  tm->add_option("--samples", tm_samples, "samples per m");
  add_common(tm, cf);

  // summability
  CommonFlags uf;
  double sc = 1.0, sd = 1.0;
  CLI::App* summ = app.add_subcommand("summability", "term/ratio tables");
  summ->add_option("--c", sc, "overall constant");
  summ->add_option("--d", sd, "geometric factor");
  add_common(summ, uf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (suite->parsed()) {
      return emit(run_suite(suite_name, build_options(suite, sf)), sf.report_path);
    }
    if (verify->parsed()) {
      zf::SuiteOptions opt = build_options(verify, vf);
      zf::FormFactorFamily custom;
      if (verify_name == "conditions-f" && family_spec.rfind("custom:", 0) == 0) {
        custom = zf::load_custom_family(
            zf::Config::from_file(family_spec.substr(7)));
        if (!family_ks.empty()) custom.active = family_ks;
        opt.custom_family = &custom;
      } else if (verify_name == "conditions-f" && family_spec == "bs") {
        custom = zf::family_buchholz_summers(zf::Profile1D::bump_transform(1.0),
                                             opt.grid.mass, 1.0);
        opt.custom_family = &custom;
      } else if (verify_name == "conditions-f" && family_spec == "st") {
        custom = zf::family_schroer_truong(zf::Profile1D::bump_transform(1.0),
                                           opt.grid.mass, 1.0, opt.alpha);
        if (!family_ks.empty()) custom.active = family_ks;
        opt.custom_family = &custom;
      }
      return emit(run_suite(verify_name, opt), vf.report_path);
    }
    if (tm->parsed()) {
      zf::SuiteOptions opt = build_options(tm, cf);
      opt.tm_mmax = tm_m;
      opt.tm_samples = tm_samples;
      return emit(run_suite("conjecture-tm", opt), cf.report_path);
    }
    if (summ->parsed()) {
      zf::SuiteOptions opt = build_options(summ, uf);
      if (summ->count("--mmax") > 0) opt.summ_mmax = uf.mmax;
      opt.summ_c = sc;
      opt.summ_d = sd;
      return emit(run_suite("summability", opt), uf.report_path);
    }
  } catch (const zf::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
