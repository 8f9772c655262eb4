#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncsc/harness/csv.hpp"
#include "ncsc/instances.hpp"
#include "ncsc/metrics.hpp"

namespace ncsc::harness {

enum class Suite { kappa_sweep, n_sweep, lower_bound, single_run, verify_all };

std::string to_string(Suite suite);
Suite parse_suite(const std::string& text);

// Solver names accepted by the harness.
const std::vector<std::string>& solver_names();
bool is_stochastic_solver(const std::string& name);

struct RunSettings {
  std::string solver = "catalyst-eg";
  std::uint64_t seed = 0;
  std::optional<double> tau;
  std::optional<double> rho;
  std::uint64_t budget = 200000000;  // oracle units
  // Start coordinates drawn as perturbation·η·N(0, 1) from the seed; zero
  // starts at the origin.
  double start_perturbation = 0.0;
  bool timing = false;
  bool moreau = true;
  bool trace = false;  // record intermediate rows
};

struct RunOutcome {
  metrics::RunTrace trace;
  std::uint64_t oracle_calls = 0;
  double grad_phi_norm = 0.0;
  double moreau_norm = 0.0;
  bool reached = false;
  Vec x;
};

// Runs a solver on a closed-form instance until ‖∇Φ(x)‖ <= ε or the budget is
// spent. Oracle calls are counted in incremental units.
RunOutcome run_to_epsilon(const SaddleProblem& problem, double epsilon,
                          double eta, const RunSettings& settings);

std::string instance_id(const instances::HardInstanceSpec& spec);

struct ExperimentConfig {
  Suite suite = Suite::single_run;
  instances::Mode mode = instances::Mode::deterministic;
  double L = 1.0;
  std::optional<double> mu;
  double Delta = 1.0;
  std::optional<double> epsilon;
  int n = 1;
  std::optional<int> d_override;
  std::optional<std::filesystem::path> instance_path;
  std::vector<double> kappas = {4, 16, 64, 256};
  std::vector<int> ns = {2, 4, 8, 16};
  std::vector<std::string> solvers;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  RunSettings run;
  // Start perturbation used by the sweeps so that seeds differ.
  double sweep_perturbation = 0.01;
  std::uint64_t lower_bound_budget = 200000;
  int jobs = 1;
  std::filesystem::path out_dir = ".";
};

// Throws ConfigError.
void validate(const ExperimentConfig& config);

// Instance of a single-run or lower-bound config: the spec file when given,
// else derived from the flags.
instances::HardInstanceSpec resolve_instance(const ExperimentConfig& config);

// Default ε of the κ sweep: the value giving d = 4 at κ = 4.
double default_sweep_epsilon(double L, double Delta);

struct SweepFit {
  std::string solver;
  metrics::LinearFit fit;
  std::vector<std::pair<double, double>> means;  // (grid value, mean calls)
};

struct SuiteResult {
  std::vector<CsvRow> rows;
  std::vector<SweepFit> fits;
  std::string svg;
  std::string report_csv;  // lower-bound report
  std::string text;
  bool passed = true;
};

SuiteResult kappa_sweep(const ExperimentConfig& config);
SuiteResult n_sweep(const ExperimentConfig& config);
SuiteResult lower_bound_suite(const ExperimentConfig& config);
SuiteResult single_run(const ExperimentConfig& config);
SuiteResult run_suite(const ExperimentConfig& config);

// Writes <suite>.csv and, for sweeps, <suite>.svg; lower-bound reports go to
// lower_bound.csv and lower_bound.txt. Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& config,
                                                 const SuiteResult& result);

}  // namespace ncsc::harness
