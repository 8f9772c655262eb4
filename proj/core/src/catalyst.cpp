#include "ncsc/catalyst.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace ncsc::catalyst {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed ^ (a * 0x9E3779B97F4A7C15ull) ^ (b * 0xC2B2AE3D27D4EB4Full);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double measure_grad_phi(const SaddleProblem& problem, const CatalystConfig& config,
                        const Vec& x) {
  if (problem.has_primal()) return problem.primal_gradient(x).norm();
  if (config.measure) return config.measure(x);
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

AuxProblem::AuxProblem(const SaddleProblem& base, Vec center)
    : base_(base), center_(std::move(center)), L_(base.constants().L) {
  if (center_.size() != base.dim_x())
    throw DimensionError("aux center does not match x dimension");
}

Constants AuxProblem::constants() const {
  const Constants c = base_.constants();
  return {3 * c.L, c.mu, c.L};
}

double AuxProblem::value(const Vec& x, const Vec& y) const {
  return base_.value(x, y) + L_ * (x - center_).squaredNorm();
}

void AuxProblem::gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
  base_.gradient(x, y, gx, gy);
  gx += 2 * L_ * (x - center_);
}

void AuxProblem::component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                                    Vec& gy) const {
  base_.component_gradient(i, x, y, gx, gy);
  gx += 2 * L_ * (x - center_);
}

double AuxProblem::primal_value(const Vec& x) const {
  return base_.primal_value(x) + L_ * (x - center_).squaredNorm();
}

void AuxProblem::primal_gradient(const Vec& x, Vec& g) const {
  base_.primal_gradient(x, g);
  g += 2 * L_ * (x - center_);
}

SubProblem::SubProblem(const AuxProblem& aux, double tau, Vec z_center)
    : aux_(aux), tau_(tau), z_(std::move(z_center)) {
  if (!(tau >= 0)) throw Error("tau must be nonnegative");
  if (z_.size() != aux.dim_y())
    throw DimensionError("subproblem center does not match y dimension");
}

Constants SubProblem::constants() const {
  const Constants base = aux_.base().constants();
  double smooth = base.L + std::max(2 * base.L, tau_);
  if (aux_.n_components() > 1) smooth *= std::sqrt(2.0);
  return {smooth, base.mu + tau_, base.L};
}

double SubProblem::value(const Vec& x, const Vec& y) const {
  return aux_.value(x, y) - tau_ / 2 * (y - z_).squaredNorm();
}

void SubProblem::gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const {
  aux_.gradient(x, y, gx, gy);
  if (tau_ != 0) gy -= tau_ * (y - z_);
}

void SubProblem::component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                                    Vec& gy) const {
  aux_.component_gradient(i, x, y, gx, gy);
  if (tau_ != 0) gy -= tau_ * (y - z_);
}

std::unique_ptr<AuxProblem> build_aux_problem(const SaddleProblem& problem,
                                              Vec center_x) {
  return std::make_unique<AuxProblem>(problem, std::move(center_x));
}

std::unique_ptr<SubProblem> build_subproblem(const AuxProblem& aux, double tau,
                                             Vec z_center) {
  return std::make_unique<SubProblem>(aux, tau, std::move(z_center));
}

ResolvedParameters resolve(const CatalystConfig& config,
                           const SaddleProblem& problem) {
  const Constants c = problem.constants();
  const double L = c.L, mu = c.mu;
  if (!(mu > 0) || !(L > 0)) throw Error("catalyst needs L > 0 and mu > 0");
  ResolvedParameters p;
  if (mu >= L) {
    p.tau = 0.0;
  } else if (config.tau) {
    if (*config.tau < 0) throw Error("tau must be nonnegative");
    p.tau = *config.tau;
  } else if (config.subsolver == solvers::SolverKind::svrg) {
    p.tau = std::max(L / std::sqrt(double(problem.n_components())) - mu, 0.0);
  } else {
    p.tau = L - mu;
  }
  p.q = mu / (mu + p.tau);
  const double sq = std::sqrt(p.q);
  p.rho = config.rho ? *config.rho : config.schedule.rho_fraction * sq;
  if (!(p.rho > 0) || !(p.rho < sq))
    throw Error("rho must lie in (0, sqrt(q))");
  p.momentum = (sq - p.q) / (sq + p.q);
  p.alpha_t = config.alpha_t
                  ? *config.alpha_t
                  : std::pow(mu, 5) / (config.schedule.alpha_t_denominator *
                                       std::pow(L, 5));
  p.alpha_0 = config.alpha_0
                  ? *config.alpha_0
                  : std::pow(mu, 5) / (config.schedule.alpha_0_denominator *
                                       std::max(1.0, std::pow(L, 7)));
  if (!(p.alpha_t > 0 && p.alpha_t < 1) || !(p.alpha_0 > 0 && p.alpha_0 < 1))
    throw Error("alpha schedule must lie in (0, 1)");
  return p;
}

InnerResult inner_loop(const AuxProblem& aux, const SaddlePoint& start,
                       const CatalystConfig& config,
                       const ResolvedParameters& params, double alpha,
                       std::uint64_t seed) {
  const std::uint64_t unit = static_cast<std::uint64_t>(aux.n_components());
  InnerResult result;
  Gradient g0 = aux.gradient(start);
  result.oracle_calls += unit;
  const double entry = g0.norm_sq();
  result.entry_grad_sq = entry;
  result.point = start;
  if (entry == 0.0) {
    result.K = 1;
    result.exit_grad_sq = 0.0;
    return result;
  }

  solvers::SolverConfig sub_config = config.subsolver_config;
  sub_config.max_iters = config.N_max;
  sub_config.stop_predicate = nullptr;

  SaddlePoint current = start;
  Vec z = start.y;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= config.K_max; ++k) {
    const double eps_k =
        std::sqrt(2.0) / 4 * std::pow(1 - params.rho, k) * entry;
    SubProblem sub(aux, params.tau, z);
    sub_config.seed = mix_seed(seed, 0x5eed, static_cast<std::uint64_t>(k));
    auto solved = solvers::solve_until(sub, config.subsolver, sub_config,
                                       current, eps_k);
    result.oracle_calls += solved.oracle_calls;
    result.subsolver_iterations += solved.iterations;

    const Vec y_prev = current.y;
    InnerRound round;
    round.k = k;
    round.epsilon_k = eps_k;
    round.iterations = solved.iterations;
    round.oracle_calls = solved.oracle_calls;
    if (config.record_inner) {
      round.start = current;
      round.exit = solved.point;
    }
    current = std::move(solved.point);
    z = current.y + params.momentum * (current.y - y_prev);

    const double check = aux.gradient(current).norm_sq();
    result.oracle_calls += unit;
    round.aux_grad_sq = check;
    result.rounds.push_back(std::move(round));
    best_ratio = std::min(best_ratio, check / entry);
    if (check <= alpha * entry) {
      result.point = std::move(current);
      result.K = k;
      result.exit_grad_sq = check;
      return result;
    }
  }
  throw BudgetExceededError("catalyst inner loop exceeded K_max rounds",
                            best_ratio);
}

CatalystResult catalyst_run(const SaddleProblem& problem,
                            const CatalystConfig& config, SaddlePoint start) {
  if (config.T_max < 1) throw Error("T_max must be >= 1");
  const ResolvedParameters params = resolve(config, problem);
  CatalystResult result;
  CatalystTrace& trace = result.trace;
  trace.params = params;

  if (config.y_warmup_tolerance) {
    auto warm = accelerated_ascent(problem, start.x, start.y,
                                   *config.y_warmup_tolerance);
    start.y = std::move(warm.y);
    trace.warmup_calls = warm.oracle_calls;
    result.oracle_calls += warm.oracle_calls;
  }
  trace.start = start;
  trace.initial_grad_phi_norm = measure_grad_phi(problem, config, start.x);
  if (config.target_epsilon &&
      trace.initial_grad_phi_norm <= *config.target_epsilon)
    result.reached_target = true;

  SaddlePoint current = start;
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < config.T_max && !result.reached_target; ++t) {
    AuxProblem aux(problem, current.x);
    const double alpha = t == 0 ? params.alpha_0 : params.alpha_t;
    InnerResult inner = inner_loop(aux, current, config, params, alpha,
                                   mix_seed(config.seed, 0x0be7,
                                            static_cast<std::uint64_t>(t)));
    result.oracle_calls += inner.oracle_calls;
    current = inner.point;

    OuterRound round;
    round.t = t;
    round.calls = result.oracle_calls;
    round.K = inner.K;
    round.alpha = alpha;
    round.entry_grad_sq = inner.entry_grad_sq;
    round.exit_grad_sq = inner.exit_grad_sq;
    round.subsolver_iterations = inner.subsolver_iterations;
    round.grad_phi_norm = measure_grad_phi(problem, config, current.x);
    round.x = current.x;
    round.y = current.y;
    round.inner = std::move(inner.rounds);
    trace.rounds.push_back(std::move(round));

    const double g = trace.rounds.back().grad_phi_norm;
    if (!std::isnan(g) && g < best) {
      best = g;
      trace.best_index = t + 1;
    }
    if (config.target_epsilon && g <= *config.target_epsilon)
      result.reached_target = true;
    if (config.should_stop && config.should_stop()) break;
  }

  if (trace.rounds.empty()) {
    result.sampled_x = start.x;
    result.best_x = start.x;
    return result;
  }
  std::mt19937_64 rng(mix_seed(config.seed, 0x5a3b, 0));
  std::uniform_int_distribution<int> pick(1, static_cast<int>(trace.rounds.size()));
  trace.sampled_index = pick(rng);
  if (trace.best_index < 0) trace.best_index = static_cast<int>(trace.rounds.size());
  result.sampled_x = trace.rounds[trace.sampled_index - 1].x;
  result.best_x = trace.rounds[trace.best_index - 1].x;
  return result;
}

AscentResult accelerated_ascent(const SaddleProblem& problem, const Vec& x,
                                Vec y0, double tolerance,
                                std::uint64_t max_iters) {
  if (!(tolerance > 0)) throw Error("ascent tolerance must be positive");
  const Constants c = problem.constants();
  if (!(c.mu > 0)) throw Error("ascent needs a strongly concave problem");
  const double sk = std::sqrt(c.L / c.mu);
  const double beta = (sk - 1) / (sk + 1);
  const std::uint64_t unit = static_cast<std::uint64_t>(problem.n_components());
  AscentResult r;
  Vec y = std::move(y0);
  Vec y_prev = y;
  Vec gx, gy;
  for (std::uint64_t k = 0; k <= max_iters; ++k) {
    const Vec w = y + beta * (y - y_prev);
    problem.gradient(x, w, gx, gy);
    r.oracle_calls += unit;
    const double gn = gy.norm();
    if (gn <= tolerance) {
      r.y = w;
      r.grad_norm = gn;
      return r;
    }
    if (!std::isfinite(gn)) throw DivergenceError("ascent diverged", k);
    y_prev = y;
    y = w + gy / c.L;
  }
  throw BudgetExceededError("accelerated ascent did not converge", 0.0);
}

MoreauResult moreau_stationarity(const SaddleProblem& problem, const Vec& x,
                                 double accuracy) {
  if (!(accuracy > 0)) throw Error("accuracy must be positive");
  const Constants c = problem.constants();
  const double L = c.L;
  MoreauResult r;
  if (problem.has_primal()) {
    // ψ(z) = Φ(z) + L‖z - x‖² is L-strongly convex and (L + L²/μ + 2L)-smooth.
    const double smooth = L + L * L / c.mu + 2 * L;
    const double sq = std::sqrt(smooth / L);
    const double beta = (sq - 1) / (sq + 1);
    Vec z = x, z_prev = x, g;
    const std::uint64_t max_iters = 5000000;
    for (std::uint64_t k = 0;; ++k) {
      const Vec w = z + beta * (z - z_prev);
      problem.primal_gradient(w, g);
      g += 2 * L * (w - x);
      const double gn = g.norm();
      if (gn <= accuracy / 2) {
        r.prox = w;
        r.value = 2 * L * (x - w).norm();
        r.error_bound = 2 * gn;
        return r;
      }
      if (k >= max_iters || !std::isfinite(gn))
        throw Error("proximal subproblem did not converge");
      z_prev = z;
      z = w - g / smooth;
    }
  }
  AuxProblem aux(problem, x);
  const double m = std::min(L, c.mu);
  const double tol = m * accuracy / (2 * L);
  solvers::SolverConfig cfg;
  cfg.max_iters = 10000000;
  try {
    auto solved = solvers::solve_until(aux, solvers::SolverKind::eg, cfg,
                                       SaddlePoint{x, Vec::Zero(problem.dim_y())},
                                       tol * tol);
    r.prox = solved.point.x;
    r.value = 2 * L * (x - r.prox).norm();
    r.error_bound = 2 * L * solved.gradient.norm() / m;
  } catch (const BudgetExceededError&) {
    throw Error("proximal subproblem did not converge");
  }
  return r;
}

}  // namespace ncsc::catalyst
