#include "ncsc/harness/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "ncsc/catalyst.hpp"
#include "ncsc/harness/spec_io.hpp"
#include "ncsc/harness/svg.hpp"
#include "ncsc/harness/verify.hpp"
#include "ncsc/solvers.hpp"

namespace ncsc::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Counts oracle units served: n per full gradient, 1 per component gradient.
class CountingProblem final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  explicit CountingProblem(const SaddleProblem& inner) : inner_(inner) {}

  Index dim_x() const override { return inner_.dim_x(); }
  Index dim_y() const override { return inner_.dim_y(); }
  int n_components() const override { return inner_.n_components(); }
  Constants constants() const override { return inner_.constants(); }

  double value(const Vec& x, const Vec& y) const override {
    return inner_.value(x, y);
  }
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override {
    units_ += static_cast<std::uint64_t>(inner_.n_components());
    inner_.gradient(x, y, gx, gy);
  }
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                          Vec& gy) const override {
    units_ += 1;
    inner_.component_gradient(i, x, y, gx, gy);
  }
  bool has_primal() const override { return inner_.has_primal(); }
  double primal_value(const Vec& x) const override { return inner_.primal_value(x); }
  void primal_gradient(const Vec& x, Vec& g) const override {
    inner_.primal_gradient(x, g);
  }
  bool has_best_response() const override { return inner_.has_best_response(); }
  void best_response(const Vec& x, Vec& y) const override {
    inner_.best_response(x, y);
  }

  std::uint64_t units() const { return units_; }

 private:
  const SaddleProblem& inner_;
  mutable std::uint64_t units_ = 0;
};

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

CsvRow make_row(const std::string& suite, const instances::HardInstanceSpec& spec,
                const std::string& solver, std::uint64_t seed,
                const RunOutcome& r) {
  CsvRow row;
  row.suite = suite;
  row.instance_id = instance_id(spec);
  row.solver = solver;
  row.seed = seed;
  row.kappa = spec.kappa();
  row.n = spec.n;
  row.epsilon = spec.epsilon;
  row.oracle_calls = r.oracle_calls;
  row.grad_phi_norm = r.grad_phi_norm;
  row.moreau_norm = r.moreau_norm;
  row.wall_ms = r.trace.empty() ? 0.0 : r.trace.rows.back().wall_ms;
  return row;
}

struct Job {
  double grid = 0.0;
  std::string solver;
  std::uint64_t seed = 0;
  instances::HardInstanceSpec spec;
};

SuiteResult run_grid(const ExperimentConfig& config, const std::string& suite,
                     const std::vector<Job>& jobs, const std::string& x_label) {
  std::vector<RunOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), config.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    ProblemPtr problem = instances::make_instance(job.spec);
    RunSettings s = config.run;
    s.solver = job.solver;
    s.seed = job.seed;
    s.start_perturbation = config.sweep_perturbation;
    s.trace = false;
    outcomes[i] = run_to_epsilon(*problem, job.spec.epsilon, job.spec.eta, s);
  });

  SuiteResult result;
  std::map<std::string, std::map<double, std::pair<double, int>>> sums;
  std::vector<std::string> order;
  int censored = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    result.rows.push_back(make_row(suite, job.spec, job.solver, job.seed, outcomes[i]));
    if (!sums.count(job.solver)) order.push_back(job.solver);
    auto& cell = sums[job.solver][job.grid];
    cell.first += static_cast<double>(outcomes[i].oracle_calls);
    cell.second += 1;
    censored += outcomes[i].reached ? 0 : 1;
  }

  std::ostringstream text;
  std::vector<PlotSeries> series;
  for (const auto& solver : order) {
    SweepFit fit;
    fit.solver = solver;
    for (const auto& [grid, cell] : sums[solver])
      fit.means.emplace_back(grid, cell.first / cell.second);
    PlotSeries ps;
    ps.label = solver;
    ps.points = fit.means;
    text << solver << ":";
    for (auto [g, m] : fit.means) text << " " << fmt_g(g) << "->" << fmt_g(m);
    if (fit.means.size() >= 4) {
      fit.fit = metrics::fit_scaling(fit.means);
      ps.fit = fit.fit;
      text << "  slope " << fit.fit.slope << " r2 " << fit.fit.r2;
      result.fits.push_back(fit);
    }
    text << "\n";
    series.push_back(std::move(ps));
  }
  if (censored > 0)
    text << censored << " run(s) hit the budget before reaching epsilon\n";
  result.text = text.str();
  result.svg = loglog_svg(series, {suite + ": oracle calls to reach epsilon",
                                   x_label, "oracle calls"});
  return result;
}

std::vector<std::string> default_lb_algorithms(instances::Mode mode) {
  switch (mode) {
    case instances::Mode::deterministic:
      return {"gda", "alt-gda", "eg", "ogda", "catalyst-eg"};
    case instances::Mode::finite_sum:
      return {"svrg", "catalyst-svrg", "incremental"};
    case instances::Mode::case1:
      return {"incremental", "svrg"};
  }
  return {};
}

}  // namespace

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::kappa_sweep: return "kappa_sweep";
    case Suite::n_sweep: return "n_sweep";
    case Suite::lower_bound: return "lower_bound";
    case Suite::single_run: return "single_run";
    case Suite::verify_all: return "verify_all";
  }
  return "unknown";
}

Suite parse_suite(const std::string& text) {
  for (Suite s : {Suite::kappa_sweep, Suite::n_sweep, Suite::lower_bound,
                  Suite::single_run, Suite::verify_all})
    if (to_string(s) == text) return s;
  throw ConfigError("unknown suite '" + text + "'");
}

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {
      "gda", "alt-gda", "eg", "ogda", "svrg", "catalyst-eg", "catalyst-ogda",
      "catalyst-svrg"};
  return names;
}

bool is_stochastic_solver(const std::string& name) {
  return name == "svrg" || name == "catalyst-svrg";
}

RunOutcome run_to_epsilon(const SaddleProblem& base, double epsilon, double eta,
                          const RunSettings& s) {
  if (!base.has_primal())
    throw ConfigError("run_to_epsilon needs a closed-form primal function");
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  CountingProblem problem(base);
  SaddlePoint start = base.zero_point();
  if (s.start_perturbation > 0) {
    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> normal(0.0, s.start_perturbation * eta);
    for (Index i = 0; i < start.x.size(); ++i) start.x[i] = normal(rng);
    for (Index i = 0; i < start.y.size(); ++i) start.y[i] = normal(rng);
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    if (!s.timing) return 0.0;
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  auto grad_phi = [&](const Vec& x) { return base.primal_gradient(x).norm(); };

  RunOutcome out;
  out.grad_phi_norm = kNaN;
  out.moreau_norm = kNaN;
  auto add_row = [&](std::uint64_t calls, std::uint64_t outer, double g) {
    metrics::TraceRow row;
    row.calls = calls;
    row.outer = outer;
    row.grad_phi_norm = g;
    row.wall_ms = elapsed();
    out.trace.add(row);
  };

  try {
    if (starts_with(s.solver, "catalyst-")) {
      catalyst::CatalystConfig cfg;
      cfg.subsolver = solvers::parse_solver(s.solver.substr(9));
      cfg.tau = s.tau;
      cfg.rho = s.rho;
      cfg.T_max = std::numeric_limits<int>::max();
      cfg.seed = s.seed;
      cfg.subsolver_config.seed = s.seed;
      cfg.record_inner = false;
      cfg.target_epsilon = epsilon;
      cfg.should_stop = [&] { return problem.units() >= s.budget; };
      auto r = catalyst::catalyst_run(problem, cfg, start);
      if (s.trace) {
        add_row(0, 0, r.trace.initial_grad_phi_norm);
        for (const auto& round : r.trace.rounds)
          add_row(round.calls, static_cast<std::uint64_t>(round.t),
                  round.grad_phi_norm);
      }
      out.x = r.trace.rounds.empty() ? r.trace.start.x : r.trace.rounds.back().x;
    } else {
      const solvers::SolverKind kind = solvers::parse_solver(s.solver);
      solvers::SolverConfig cfg;
      cfg.seed = s.seed;
      cfg.max_iters = std::numeric_limits<std::uint64_t>::max();
      if (kind == solvers::SolverKind::svrg) {
        const Constants c = base.constants();
        const double kappa = c.L / c.mu;
        cfg.step_x = 1.0 / (16 * (kappa + 1) * (kappa + 1) * c.L);
        cfg.step_y = 1.0 / (8 * c.L);
      }
      std::uint64_t k = 0;
      double mark = 1.0;
      cfg.stop_predicate = [&](const SaddlePoint& z) {
        const double g = grad_phi(z.x);
        const std::uint64_t calls = problem.units();
        if (s.trace && static_cast<double>(calls) >= mark) {
          add_row(calls, k, g);
          mark = std::max(mark * 1.25, static_cast<double>(calls) + 1);
        }
        ++k;
        return g <= epsilon || calls >= s.budget;
      };
      auto r = solvers::run(kind, problem, cfg, start);
      out.x = r.point.x;
    }
  } catch (const DivergenceError&) {
    out.oracle_calls = problem.units();
    add_row(out.oracle_calls, 0, kNaN);
    return out;
  } catch (const BudgetExceededError&) {
    out.oracle_calls = problem.units();
    add_row(out.oracle_calls, 0, kNaN);
    return out;
  }
  out.oracle_calls = problem.units();
  out.grad_phi_norm = grad_phi(out.x);
  out.reached = out.grad_phi_norm <= epsilon;
  if (s.moreau)
    out.moreau_norm = catalyst::moreau_stationarity(base, out.x, 1e-3 * epsilon).value;
  add_row(out.oracle_calls, out.trace.empty() ? 0 : out.trace.rows.back().outer,
          out.grad_phi_norm);
  return out;
}

std::string instance_id(const instances::HardInstanceSpec& spec) {
  std::string mode = spec.mode == instances::Mode::deterministic ? "det"
                     : spec.mode == instances::Mode::finite_sum  ? "fs"
                                                                 : "case1";
  return mode + "-k" + fmt_g(spec.kappa()) + "-n" + std::to_string(spec.n) + "-d" +
         std::to_string(spec.d);
}

void validate(const ExperimentConfig& c) {
  if (!(c.L > 0) || !std::isfinite(c.L)) throw ConfigError("L must be positive");
  if (!(c.Delta > 0) || !std::isfinite(c.Delta))
    throw ConfigError("Delta must be positive");
  if (c.mu && !(*c.mu > 0)) throw ConfigError("mu must be positive");
  if (c.epsilon && !(*c.epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (c.n < 1) throw ConfigError("n must be >= 1");
  if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (c.run.budget < 1) throw ConfigError("budget must be >= 1");
  if (c.sweep_perturbation < 0) throw ConfigError("perturbation must be >= 0");
  for (double k : c.kappas)
    if (!(k >= 1) || !std::isfinite(k)) throw ConfigError("kappa values must be >= 1");
  for (int n : c.ns)
    if (n < 2) throw ConfigError("n-sweep values must be >= 2");
  if (c.suite == Suite::lower_bound) {
    for (const auto& name : c.solvers) {
      try {
        metrics::parse_lb_algorithm(name);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }
  } else {
    const auto& known = solver_names();
    for (const auto& name : c.solvers)
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw ConfigError("unknown solver '" + name + "'");
  }
  if (c.seeds.empty()) throw ConfigError("at least one seed is required");
  if (c.suite == Suite::kappa_sweep && c.kappas.empty())
    throw ConfigError("kappa sweep needs at least one kappa");
  if (c.suite == Suite::n_sweep && c.ns.empty())
    throw ConfigError("n sweep needs at least one n");
  if (c.instance_path && !std::filesystem::exists(*c.instance_path))
    throw ConfigError("instance file not found: " + c.instance_path->string());
}

instances::HardInstanceSpec resolve_instance(const ExperimentConfig& c) {
  if (c.instance_path) return read_spec(*c.instance_path);
  if (!c.mu) throw ConfigError("--mu is required without --instance");
  if (!c.epsilon) throw ConfigError("--epsilon is required without --instance");
  try {
    return instances::derive_spec(c.mode, c.L, *c.mu, c.Delta, *c.epsilon, c.n,
                                  c.d_override);
  } catch (const InvalidSpecError& e) {
    throw ConfigError(e.what());
  }
}

double default_sweep_epsilon(double L, double Delta) {
  return instances::epsilon_for_dimension(instances::Mode::deterministic, L, L / 4,
                                          Delta, 4);
}

SuiteResult kappa_sweep(const ExperimentConfig& c) {
  validate(c);
  const double eps = c.epsilon.value_or(default_sweep_epsilon(c.L, c.Delta));
  const std::vector<std::string> names =
      c.solvers.empty() ? std::vector<std::string>{"catalyst-eg", "gda"} : c.solvers;
  std::vector<Job> jobs;
  for (double kappa : c.kappas) {
    instances::HardInstanceSpec spec;
    try {
      spec = instances::derive_spec(instances::Mode::deterministic, c.L, c.L / kappa,
                                    c.Delta, eps, 1, c.d_override);
    } catch (const InvalidSpecError& e) {
      throw ConfigError(e.what());
    }
    for (const auto& name : names) {
      if (name == "svrg" || name == "catalyst-svrg")
        throw ConfigError("the kappa sweep uses a single-component instance; " +
                          name + " needs a finite sum");
      for (std::uint64_t seed : c.seeds) jobs.push_back({kappa, name, seed, spec});
    }
  }
  return run_grid(c, "kappa_sweep", jobs, "condition number kappa");
}

SuiteResult n_sweep(const ExperimentConfig& c) {
  validate(c);
  const int n_max = *std::max_element(c.ns.begin(), c.ns.end());
  const double mu = c.mu.value_or(c.L / (4.0 * n_max));
  const double eps = c.epsilon.value_or(instances::epsilon_for_dimension(
      instances::Mode::finite_sum, c.L, mu, c.Delta, 4, n_max));
  const std::vector<std::string> names =
      c.solvers.empty()
          ? std::vector<std::string>{"svrg", "catalyst-svrg", "catalyst-eg"}
          : c.solvers;
  std::vector<Job> jobs;
  for (int n : c.ns) {
    instances::HardInstanceSpec spec;
    try {
      spec = instances::derive_spec(instances::Mode::finite_sum, c.L, mu, c.Delta,
                                    eps, n, c.d_override);
    } catch (const InvalidSpecError& e) {
      throw ConfigError(e.what());
    }
    for (const auto& name : names)
      for (std::uint64_t seed : c.seeds)
        jobs.push_back({static_cast<double>(n), name, seed, spec});
  }
  return run_grid(c, "n_sweep", jobs, "number of components n");
}

SuiteResult lower_bound_suite(const ExperimentConfig& c) {
  validate(c);
  const instances::HardInstanceSpec spec = resolve_instance(c);
  std::vector<metrics::LbAlgorithm> algorithms;
  for (const auto& name : c.solvers.empty() ? default_lb_algorithms(spec.mode)
                                            : c.solvers)
    algorithms.push_back(metrics::parse_lb_algorithm(name));
  metrics::LowerBoundOptions options;
  options.budget = c.lower_bound_budget;
  options.seeds = c.seeds;
  const auto report =
      metrics::verify_lower_bound(spec, algorithms, spec.epsilon, options);
  SuiteResult result;
  result.report_csv = report.to_csv();
  result.text = report.to_text();
  result.passed = report.passed();
  return result;
}

SuiteResult single_run(const ExperimentConfig& c) {
  validate(c);
  const instances::HardInstanceSpec spec = resolve_instance(c);
  ProblemPtr problem = instances::make_instance(spec);
  RunSettings s = c.run;
  s.trace = true;
  if (s.solver == "svrg" || s.solver == "catalyst-svrg") {
    if (problem->n_components() < 2)
      throw ConfigError(s.solver + " needs a finite-sum instance");
  }
  const RunOutcome r = run_to_epsilon(*problem, spec.epsilon, spec.eta, s);
  SuiteResult result;
  for (std::size_t i = 0; i < r.trace.rows.size(); ++i) {
    const auto& tr = r.trace.rows[i];
    CsvRow row = make_row("single_run", spec, s.solver, s.seed, r);
    row.oracle_calls = tr.calls;
    row.grad_phi_norm = tr.grad_phi_norm;
    row.wall_ms = tr.wall_ms;
    if (i + 1 < r.trace.rows.size()) row.moreau_norm = kNaN;
    result.rows.push_back(row);
  }
  std::ostringstream text;
  text << s.solver << " on " << instance_id(spec) << ": " << r.oracle_calls
       << " oracle calls, |grad Phi| = " << r.grad_phi_norm
       << (r.reached ? " (reached epsilon)" : " (budget exhausted)") << "\n";
  result.text = text.str();
  result.passed = r.reached;
  return result;
}

SuiteResult run_suite(const ExperimentConfig& c) {
  switch (c.suite) {
    case Suite::kappa_sweep: return kappa_sweep(c);
    case Suite::n_sweep: return n_sweep(c);
    case Suite::lower_bound: return lower_bound_suite(c);
    case Suite::single_run: return single_run(c);
    case Suite::verify_all: {
      const auto props = run_properties();
      SuiteResult result;
      result.text = format_properties(props);
      result.passed = all_passed(props);
      return result;
    }
  }
  throw ConfigError("unknown suite");
}

std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& c,
                                                 const SuiteResult& result) {
  std::filesystem::create_directories(c.out_dir);
  std::vector<std::filesystem::path> written;
  auto write_text = [&](const std::string& name, const std::string& text) {
    const auto path = c.out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed for " + path.string());
    written.push_back(path);
  };
  const std::string name = to_string(c.suite);
  switch (c.suite) {
    case Suite::kappa_sweep:
    case Suite::n_sweep:
      write_csv(result.rows, c.out_dir / (name + ".csv"));
      written.push_back(c.out_dir / (name + ".csv"));
      write_text(name + ".svg", result.svg);
      break;
    case Suite::single_run:
      write_csv(result.rows, c.out_dir / (name + ".csv"));
      written.push_back(c.out_dir / (name + ".csv"));
      break;
    case Suite::lower_bound:
      write_text(name + ".csv", result.report_csv);
      write_text(name + ".txt", result.text);
      break;
    case Suite::verify_all:
      write_text(name + ".txt", result.text);
      break;
  }
  return written;
}

}  // namespace ncsc::harness
