#include "ncsc/harness/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncsc/harness/spec_io.hpp"
#include "ncsc/harness/suites.hpp"
#include "ncsc/harness/verify.hpp"

namespace ncsc::harness {

namespace {

struct InstanceFlags {
  std::string mode = "deterministic";
  double L = 1.0;
  std::optional<double> mu;
  double Delta = 1.0;
  std::optional<double> epsilon;
  int n = 1;
  std::optional<int> d_override;
};

void add_instance_flags(CLI::App* app, InstanceFlags& f) {
  app->add_option("--mode", f.mode, "deterministic, finite_sum or case1")
      ->capture_default_str();
  app->add_option("--L", f.L, "smoothness constant")->capture_default_str();
  app->add_option("--mu", f.mu, "strong concavity constant");
  app->add_option("--Delta", f.Delta, "initial primal gap")->capture_default_str();
  app->add_option("--epsilon", f.epsilon, "target stationarity");
  app->add_option("--n", f.n, "number of components")->capture_default_str();
  app->add_option("--d-override", f.d_override, "chain length (case-1: dimension)");
}

void apply(const InstanceFlags& f, ExperimentConfig& c) {
  try {
    c.mode = instances::parse_mode(f.mode);
  } catch (const InvalidSpecError& e) {
    throw ConfigError(e.what());
  }
  c.L = f.L;
  c.mu = f.mu;
  c.Delta = f.Delta;
  c.epsilon = f.epsilon;
  c.n = f.n;
  c.d_override = f.d_override;
}

void write_and_report(const ExperimentConfig& c, const SuiteResult& r,
                      std::ostream& out) {
  out << r.text;
  for (const auto& path : write_outputs(c, r)) out << "wrote " << path.string() << "\n";
}

}  // namespace

std::filesystem::path default_out_dir() {
  const char* env = std::getenv("NCSC_OUT_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".");
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"NC-SC minimax toolkit: hard instances, solvers and experiments", "ncsc"};
  app.require_subcommand(1);

  InstanceFlags gen_flags;
  std::optional<std::string> gen_out;
  auto* gen = app.add_subcommand("gen", "write an instance spec file");
  add_instance_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "spec file path (default <out dir>/instance.spec)");

  InstanceFlags run_flags;
  ExperimentConfig run_cfg;
  std::optional<std::string> run_instance;
  std::optional<std::string> run_out;
  auto* run = app.add_subcommand("run", "run one solver on one instance and write its trace");
  add_instance_flags(run, run_flags);
  run->add_option("--instance", run_instance, "instance spec file");
  run->add_option("--solver", run_cfg.run.solver, "solver name")->capture_default_str();
  run->add_option("--seed", run_cfg.run.seed, "random seed")->capture_default_str();
  run->add_option("--tau", run_cfg.run.tau, "Catalyst regularization");
  run->add_option("--rho", run_cfg.run.rho, "Catalyst momentum rate");
  run->add_option("--budget", run_cfg.run.budget, "oracle-unit budget")->capture_default_str();
  run->add_flag("--timing", run_cfg.run.timing, "record wall-clock times");
  run->add_option("--out", run_out, "output directory");

  InstanceFlags bench_flags;
  ExperimentConfig bench_cfg;
  std::string bench_suite = "kappa_sweep";
  std::optional<std::string> bench_instance;
  std::optional<std::string> bench_out;
  auto* bench = app.add_subcommand("bench", "run an experiment suite and write CSV and SVG");
  add_instance_flags(bench, bench_flags);
  bench->add_option("--suite", bench_suite, "kappa_sweep, n_sweep or lower_bound")
      ->capture_default_str();
  bench->add_option("--instance", bench_instance, "instance spec file (lower_bound)");
  bench->add_option("--kappas", bench_cfg.kappas, "condition numbers")->delimiter(',');
  bench->add_option("--ns", bench_cfg.ns, "component counts")->delimiter(',');
  bench->add_option("--solvers,--solver", bench_cfg.solvers, "solver names")
      ->delimiter(',');
  bench->add_option("--seeds,--seed", bench_cfg.seeds, "random seeds")->delimiter(',');
  bench->add_option("--tau", bench_cfg.run.tau, "Catalyst regularization");
  bench->add_option("--rho", bench_cfg.run.rho, "Catalyst momentum rate");
  bench->add_option("--budget", bench_cfg.run.budget, "oracle-unit budget per run")
      ->capture_default_str();
  bench->add_option("--lb-budget", bench_cfg.lower_bound_budget,
                    "oracle-unit budget per lower-bound run")
      ->capture_default_str();
  bench->add_option("--perturbation", bench_cfg.sweep_perturbation,
                    "start perturbation in units of eta")
      ->capture_default_str();
  bench->add_option("--jobs", bench_cfg.jobs, "parallel grid points")->capture_default_str();
  bench->add_flag("--timing", bench_cfg.run.timing, "record wall-clock times");
  bench->add_option("--out", bench_out, "output directory");

  std::optional<std::string> verify_out;
  auto* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--out", verify_out, "also write verify_all.txt here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (*gen) {
      ExperimentConfig c;
      apply(gen_flags, c);
      const auto spec = resolve_instance(c);
      const std::filesystem::path path =
          gen_out ? std::filesystem::path(*gen_out) : default_out_dir() / "instance.spec";
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      write_spec(spec, path);
      out << format_spec(spec) << "wrote " << path.string() << "\n";
      return kExitOk;
    }
    if (*run) {
      apply(run_flags, run_cfg);
      run_cfg.suite = Suite::single_run;
      if (run_instance) run_cfg.instance_path = *run_instance;
      run_cfg.out_dir = run_out ? std::filesystem::path(*run_out) : default_out_dir();
      const auto r = single_run(run_cfg);
      write_and_report(run_cfg, r, out);
      return kExitOk;
    }
    if (*bench) {
      apply(bench_flags, bench_cfg);
      bench_cfg.suite = parse_suite(bench_suite);
      if (bench_cfg.suite == Suite::single_run || bench_cfg.suite == Suite::verify_all)
        throw ConfigError("bench runs kappa_sweep, n_sweep or lower_bound; use run or verify");
      if (bench_instance) bench_cfg.instance_path = *bench_instance;
      bench_cfg.out_dir = bench_out ? std::filesystem::path(*bench_out) : default_out_dir();
      const auto r = run_suite(bench_cfg);
      write_and_report(bench_cfg, r, out);
      return r.passed ? kExitOk : kExitVerificationFailed;
    }
    if (*verify) {
      const auto props = run_properties();
      const std::string text = format_properties(props);
      out << text;
      if (verify_out) {
        ExperimentConfig c;
        c.suite = Suite::verify_all;
        c.out_dir = *verify_out;
        SuiteResult r;
        r.text = text;
        write_outputs(c, r);
      }
      return all_passed(props) ? kExitOk : kExitVerificationFailed;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidSpecError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitConfigError;
}

}  // namespace ncsc::harness
