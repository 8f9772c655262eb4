#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ncsc/catalyst.hpp"
#include "ncsc/metrics.hpp"
#include "ncsc/oracle_log.hpp"
#include "ncsc/solvers.hpp"

namespace ncsc::metrics {

using instances::HardInstanceSpec;
using instances::Mode;

std::string to_string(LbAlgorithm a) {
  switch (a) {
    case LbAlgorithm::gda: return "gda";
    case LbAlgorithm::alt_gda: return "alt-gda";
    case LbAlgorithm::eg: return "eg";
    case LbAlgorithm::ogda: return "ogda";
    case LbAlgorithm::catalyst_eg: return "catalyst-eg";
    case LbAlgorithm::svrg: return "svrg";
    case LbAlgorithm::catalyst_svrg: return "catalyst-svrg";
    case LbAlgorithm::incremental: return "incremental";
  }
  return "unknown";
}

LbAlgorithm parse_lb_algorithm(const std::string& text) {
  for (LbAlgorithm a :
       {LbAlgorithm::gda, LbAlgorithm::alt_gda, LbAlgorithm::eg, LbAlgorithm::ogda,
        LbAlgorithm::catalyst_eg, LbAlgorithm::svrg, LbAlgorithm::catalyst_svrg,
        LbAlgorithm::incremental})
    if (to_string(a) == text) return a;
  throw Error("unknown algorithm '" + text + "'");
}

bool is_stochastic(LbAlgorithm a) {
  return a == LbAlgorithm::svrg || a == LbAlgorithm::catalyst_svrg ||
         a == LbAlgorithm::incremental;
}

bool LowerBoundReport::passed() const {
  for (const auto& o : outcomes)
    if (!o.passed) return false;
  return !outcomes.empty();
}

std::string LowerBoundReport::to_text() const {
  std::ostringstream os;
  os << "instance mode=" << instances::to_string(spec.mode) << " d=" << spec.d
     << " n=" << spec.n << " kappa=" << spec.kappa() << " epsilon=" << epsilon
     << "\n";
  os << "preconditions " << (preconditions_hold ? "hold" : "fail") << " ("
     << preconditions_detail << "); branch=" << branch << "\n";
  for (const auto& o : outcomes) {
    os << (o.passed ? "PASS " : "FAIL ") << to_string(o.algorithm)
       << " runs=" << o.runs << " activation=" << o.calls_to_activation
       << " (min " << o.min_calls_to_activation << ") epsilon=" << o.calls_to_epsilon
       << " (min " << o.min_calls_to_epsilon << ", reached " << o.reached << "/"
       << o.runs << ") floor=" << o.floor
       << " floor_violations=" << o.floor_violations << "/" << o.queries_checked
       << "\n";
  }
  return os.str();
}

std::string LowerBoundReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << std::scientific;
  os << "algorithm,runs,calls_to_activation,min_calls_to_activation,"
        "calls_to_epsilon,min_calls_to_epsilon,reached,floor,floor_violations,"
        "queries_checked,branch,passed\n";
  for (const auto& o : outcomes)
    os << to_string(o.algorithm) << ',' << o.runs << ',' << o.calls_to_activation
       << ',' << o.min_calls_to_activation << ',' << o.calls_to_epsilon << ','
       << o.min_calls_to_epsilon << ',' << o.reached << ',' << o.floor << ','
       << o.floor_violations << ',' << o.queries_checked << ',' << branch << ','
       << (o.passed ? 1 : 0) << '\n';
  return os.str();
}

namespace {

struct QueryState {
  double epsilon = 0.0;
  bool reached = false;
  std::uint64_t units_to_epsilon = 0;
  std::uint64_t floor_violations = 0;
  std::uint64_t checked = 0;
};

// True when the query lies in the region where the gradient floor applies.
bool span_restricted(const HardInstanceSpec& spec, const Vec& x) {
  switch (spec.mode) {
    case Mode::deterministic:
      return x[spec.d - 1] == 0.0 && x[spec.d] == 0.0;
    case Mode::finite_sum: {
      const Index b = spec.d + 1;
      int idle = 0;
      for (int i = 0; i < spec.n; ++i)
        if (x[i * b + spec.d - 1] == 0.0 && x[i * b + spec.d] == 0.0) ++idle;
      return 2 * idle > spec.n;
    }
    case Mode::case1: {
      const Index m = spec.d / spec.n;
      int zero_blocks = 0;
      for (int i = 0; i < spec.n; ++i)
        if (x.segment(i * m, m).isZero(0.0)) ++zero_blocks;
      return 2 * zero_blocks >= spec.n;
    }
  }
  return false;
}

ActivationWatch make_watch(const HardInstanceSpec& spec) {
  ActivationWatch w;
  switch (spec.mode) {
    case Mode::deterministic:
      w.coordinates = {spec.d - 1};
      w.required = 1;
      break;
    case Mode::finite_sum:
      for (int i = 0; i < spec.n; ++i)
        w.coordinates.push_back(static_cast<Index>(i) * (spec.d + 1) + spec.d - 1);
      w.required = static_cast<std::size_t>(spec.n / 2 + 1);
      break;
    case Mode::case1:
      for (int i = 0; i < spec.n; ++i)
        w.coordinates.push_back(static_cast<Index>(i) * (spec.d / spec.n));
      w.required = static_cast<std::size_t>(spec.n / 2 + 1);
      break;
  }
  return w;
}

struct SingleRun {
  double activation = 0.0;
  double epsilon = 0.0;
  bool reached = false;
  std::uint64_t violations = 0;
  std::uint64_t checked = 0;
};

SingleRun run_algorithm(const HardInstanceSpec& spec, ProblemPtr instance,
                        LbAlgorithm algorithm, double epsilon,
                        std::uint64_t budget, std::uint64_t seed) {
  auto state = std::make_shared<QueryState>();
  state->epsilon = epsilon;
  const SaddleProblem* inner = instance.get();
  QueryObserver observer = [state, inner, &spec](const Vec& x, const Vec&,
                                                 const OracleLog& log) {
    const double g = inner->primal_gradient(x).norm();
    if (span_restricted(spec, x)) {
      ++state->checked;
      if (g < state->epsilon) ++state->floor_violations;
    }
    if (!state->reached && g <= state->epsilon) {
      state->reached = true;
      state->units_to_epsilon = log.units;
    }
  };
  auto [logged, log] = wrap_with_logging(instance, make_watch(spec), observer);
  const SaddleProblem& problem = *logged;
  auto done = [state, log = log, budget] {
    return state->reached || log->units >= budget;
  };

  const Constants c = problem.constants();
  const SaddlePoint zero = problem.zero_point();
  try {
    switch (algorithm) {
      case LbAlgorithm::gda:
      case LbAlgorithm::alt_gda:
      case LbAlgorithm::eg:
      case LbAlgorithm::ogda: {
        const solvers::SolverKind kind =
            algorithm == LbAlgorithm::gda       ? solvers::SolverKind::gda
            : algorithm == LbAlgorithm::alt_gda ? solvers::SolverKind::alt_gda
            : algorithm == LbAlgorithm::eg      ? solvers::SolverKind::eg
                                                : solvers::SolverKind::ogda;
        solvers::SolverConfig cfg;
        cfg.max_iters = budget;
        cfg.stop_predicate = [&](const SaddlePoint&) { return done(); };
        solvers::run(kind, problem, cfg, zero);
        break;
      }
      case LbAlgorithm::svrg: {
        solvers::SolverConfig cfg;
        const double kappa = c.L / c.mu;
        cfg.step_x = 1.0 / (16 * (kappa + 1) * (kappa + 1) * c.L);
        cfg.step_y = 1.0 / (8 * c.L);
        cfg.seed = seed;
        cfg.max_iters = budget;
        cfg.stop_predicate = [&](const SaddlePoint&) { return done(); };
        solvers::run(solvers::SolverKind::svrg, problem, cfg, zero);
        break;
      }
      case LbAlgorithm::catalyst_eg:
      case LbAlgorithm::catalyst_svrg: {
        catalyst::CatalystConfig cfg;
        cfg.subsolver = algorithm == LbAlgorithm::catalyst_eg
                            ? solvers::SolverKind::eg
                            : solvers::SolverKind::svrg;
        cfg.T_max = 1000000;
        cfg.seed = seed;
        cfg.record_inner = false;
        cfg.should_stop = done;
        cfg.subsolver_config.seed = seed;
        catalyst::catalyst_run(problem, cfg, zero);
        break;
      }
      case LbAlgorithm::incremental: {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, problem.n_components() - 1);
        SaddlePoint z = zero;
        Vec gx, gy;
        const double step = 1.0 / (8 * c.L);
        while (!done()) {
          problem.component_gradient(pick(rng), z.x, z.y, gx, gy);
          z.x -= step * gx;
          z.y += step * gy;
        }
        break;
      }
    }
  } catch (const DivergenceError&) {
  } catch (const BudgetExceededError&) {
  }

  if (log->first_protocol_violation)
    throw ProtocolViolationError(
        to_string(algorithm) + " queried outside the span of its history at call " +
        std::to_string(*log->first_protocol_violation));

  SingleRun r;
  r.reached = state->reached;
  r.epsilon = state->reached ? double(state->units_to_epsilon) : double(budget);
  r.activation = log->first_unit_with_xd_nonzero
                     ? double(*log->first_unit_with_xd_nonzero)
                     : double(std::max<std::uint64_t>(budget, log->units));
  r.violations = state->floor_violations;
  r.checked = state->checked;
  return r;
}

}  // namespace

LowerBoundReport verify_lower_bound(const HardInstanceSpec& spec,
                                    const std::vector<LbAlgorithm>& algorithms,
                                    double epsilon,
                                    const LowerBoundOptions& options) {
  instances::validate(spec);
  if (options.seeds.empty()) throw Error("lower-bound verification needs seeds");
  LowerBoundReport report;
  report.spec = spec;
  report.epsilon = epsilon;
  report.gradient_floor = spec.gradient_floor();
  const auto pre = instances::check_epsilon_preconditions(spec);
  report.preconditions_hold = pre.holds;
  report.preconditions_detail = pre.detail;
  report.branch = pre.holds ? "activation+epsilon" : "activation";

  ProblemPtr instance = instances::make_instance(spec);
  for (LbAlgorithm a : algorithms) {
    AlgorithmOutcome o;
    o.algorithm = a;
    o.floor = spec.call_floor();
    o.min_calls_to_activation = std::numeric_limits<double>::infinity();
    o.min_calls_to_epsilon = std::numeric_limits<double>::infinity();
    const std::vector<std::uint64_t> seeds =
        is_stochastic(a) ? options.seeds
                         : std::vector<std::uint64_t>{options.seeds.front()};
    for (std::uint64_t seed : seeds) {
      const SingleRun r =
          run_algorithm(spec, instance, a, epsilon, options.budget, seed);
      ++o.runs;
      o.calls_to_activation += r.activation;
      o.calls_to_epsilon += r.epsilon;
      o.min_calls_to_activation = std::min(o.min_calls_to_activation, r.activation);
      o.min_calls_to_epsilon = std::min(o.min_calls_to_epsilon, r.epsilon);
      o.reached += r.reached ? 1 : 0;
      o.floor_violations += r.violations;
      o.queries_checked += r.checked;
    }
    o.calls_to_activation /= o.runs;
    o.calls_to_epsilon /= o.runs;
    o.passed = o.calls_to_activation >= o.floor && o.calls_to_epsilon >= o.floor &&
               (!pre.holds || o.floor_violations == 0);
    report.outcomes.push_back(o);
  }
  return report;
}

}  // namespace ncsc::metrics
