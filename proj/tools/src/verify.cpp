#include "ncsc/harness/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "ncsc/harness/csv.hpp"
#include "ncsc/harness/spec_io.hpp"
#include "ncsc/ncsc.hpp"

namespace ncsc::harness {

namespace {

using instances::ChainParams;
using instances::Mode;

struct Rng {
  std::mt19937_64 engine;
  std::normal_distribution<double> normal;

  explicit Rng(std::uint64_t seed) : engine(seed) {}
  Vec vec(Index n, double scale = 1.0) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = scale * normal(engine);
    return v;
  }
  SaddlePoint point(const SaddleProblem& p, double scale = 1.0) {
    return {vec(p.dim_x(), scale), vec(p.dim_y(), scale)};
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

ChainParams chain_params(int d) {
  const double L = 1.0, mu = 0.1;
  return {d, L / 2, mu / 2, mu / (100 * L), 1.0};
}

instances::HardInstanceSpec finite_sum_spec(int n, int d) {
  const double L = 1.0, mu = 1.0 / (4.0 * n);
  const double eps =
      instances::epsilon_for_dimension(Mode::finite_sum, L, mu, 1.0, d, n);
  return instances::derive_spec(Mode::finite_sum, L, mu, 1.0, eps, n, d);
}

instances::HardInstanceSpec deterministic_spec(int d, double kappa = 4.0) {
  const double eps = instances::epsilon_for_dimension(Mode::deterministic, 1.0,
                                                      1.0 / kappa, 1.0, d);
  return instances::derive_spec(Mode::deterministic, 1.0, 1.0 / kappa, 1.0, eps);
}

std::shared_ptr<instances::QuadraticProblem> random_scsc(int n, int dim,
                                                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<instances::QuadraticComponent> comps;
  for (int i = 0; i < n; ++i) {
    instances::QuadraticComponent c;
    Eigen::MatrixXd G = Eigen::MatrixXd::NullaryExpr(
        dim, dim, [&] { return 0.3 * rng.normal(rng.engine); });
    Eigen::MatrixXd H = Eigen::MatrixXd::NullaryExpr(
        dim, dim, [&] { return 0.3 * rng.normal(rng.engine); });
    c.A = Eigen::MatrixXd::Identity(dim, dim) + G * G.transpose();
    c.C = Eigen::MatrixXd::Identity(dim, dim) + H * H.transpose();
    c.B = Eigen::MatrixXd::NullaryExpr(
        dim, dim, [&] { return 0.5 * rng.normal(rng.engine); });
    c.a = rng.vec(dim);
    c.c = rng.vec(dim);
    comps.push_back(std::move(c));
  }
  return std::make_shared<instances::QuadraticProblem>(std::move(comps));
}

double max_fd_error(const SaddleProblem& p, int points, double scale,
                    std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < points; ++k)
    worst = std::max(worst, finite_difference_check(p, rng.point(p, scale), 1e-6));
  return worst;
}

double max_primal_identity_error(const SaddleProblem& p, int points, double scale,
                                 std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const Vec x = rng.vec(p.dim_x(), scale);
    const double phi = p.primal_value(x);
    const double f = p.value(x, p.best_response(x));
    worst = std::max(worst, std::abs(phi - f) / (1 + std::abs(phi)));
  }
  return worst;
}

bool support_within(const Vec& v, const std::vector<char>& allowed) {
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0.0 && !allowed[i]) return false;
  return true;
}

// X_k = span{e_1..e_k}; Y_k = span{e_{d+2}, ..., e_{d-k+2}}, the last k + 1
// coordinates of y for k >= 1.
std::vector<char> x_set(Index dim, int k) {
  std::vector<char> s(dim, 0);
  for (int i = 0; i < k && i < dim; ++i) s[i] = 1;
  return s;
}
std::vector<char> y_set(Index dim, int k) {
  std::vector<char> s(dim, 0);
  if (k == 0) return s;
  for (int i = 0; i <= k && i < dim; ++i) s[dim - 1 - i] = 1;
  return s;
}
Vec fill(Rng& rng, const std::vector<char>& support) {
  Vec v = Vec::Zero(static_cast<Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i]) v[i] = rng.normal(rng.engine);
  return v;
}

// Count of zero-chain violations for case a), b) or c) over `points` draws.
int zero_chain_violations(char which, int d, int points, std::uint64_t seed) {
  auto inst = instances::make_chain_instance(chain_params(d));
  Rng rng(seed);
  std::uniform_int_distribution<int> pick_k(1, d);
  int bad = 0;
  Vec gx, gy;
  const Index dx = inst->dim_x(), dy = inst->dim_y();
  for (int s = 0; s < points; ++s) {
    if (which == 'a') {
      inst->gradient(Vec::Zero(dx), Vec::Zero(dy), gx, gy);
      if (!support_within(gx, x_set(dx, 1)) || gy.cwiseAbs().maxCoeff() != 0.0)
        ++bad;
      continue;
    }
    const int k = pick_k(rng.engine);
    const int kx = which == 'b' ? k : k + 1;
    const Vec x = fill(rng, x_set(dx, std::min<int>(kx, dx)));
    const Vec y = fill(rng, y_set(dy, k));
    inst->gradient(x, y, gx, gy);
    const bool ok = which == 'b'
                        ? support_within(gx, x_set(dx, k + 1)) &&
                              support_within(gy, y_set(dy, k))
                        : support_within(gx, x_set(dx, k + 1)) &&
                              support_within(gy, y_set(dy, k + 1));
    if (!ok) ++bad;
  }
  return bad;
}

double simpson_gamma(double x) {
  const int m = 2000;
  const double h = (x - 1.0) / m;
  auto f = [](double t) { return 120 * t * t * (t - 1) / (1 + t * t); };
  double s = f(1.0) + f(x);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4 : 2) * f(1.0 + i * h);
  return s * h / 3;
}

double distance_to_saddle(const instances::QuadraticProblem& q,
                          const SaddlePoint& z) {
  const SaddlePoint s = q.saddle_point();
  return std::sqrt((z.x - s.x).squaredNorm() + (z.y - s.y).squaredNorm());
}

Property converges_on_quadratic(const std::string& name, solvers::SolverKind kind,
                                int n) {
  auto q = random_scsc(n, 4, 7);
  solvers::SolverConfig cfg;
  cfg.max_iters = kind == solvers::SolverKind::svrg ? 400 : 20000;
  cfg.seed = 3;
  const SaddlePoint start = q->zero_point();
  const double d0 = distance_to_saddle(*q, start);
  const auto r = solvers::run(kind, *q, cfg, start);
  const double d1 = distance_to_saddle(*q, r.point);
  return {name, d1 <= 1e-8 * d0,
          "distance ratio " + num(d1 / d0) + " after " +
              std::to_string(r.iterations) + " iterations"};
}

}  // namespace

std::vector<Property> run_properties() {
  std::vector<Property> props;
  auto check = [&](const std::string& name, const std::function<Property()>& fn) {
    try {
      Property p = fn();
      p.name = name;
      props.push_back(std::move(p));
    } catch (const std::exception& e) {
      props.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };

  check("gamma_matches_quadrature", [] {
    double worst = 0;
    for (double x : {-2.0, -0.5, 0.0, 0.5, 1.5, 3.0})
      worst = std::max(worst, std::abs(instances::gamma(x) - simpson_gamma(x)) /
                                  (1 + std::abs(simpson_gamma(x))));
    return Property{"", worst <= 1e-10, "max rel error " + num(worst)};
  });
  check("gamma_derivative_matches_difference", [] {
    double worst = 0;
    for (double x : {-2.0, -0.5, 0.0, 0.5, 1.0, 3.0}) {
      const double fd =
          (instances::gamma(x + 1e-6) - instances::gamma(x - 1e-6)) / 2e-6;
      worst = std::max(worst, std::abs(fd - instances::gamma_prime(x)) /
                                  (1 + std::abs(fd)));
    }
    return Property{"", worst <= 1e-6, "max rel error " + num(worst)};
  });
  check("chain_matrix_matches_dense", [] {
    Rng rng(1);
    double worst = 0;
    for (int d : {1, 4, 9}) {
      instances::ChainMatrix B(d, 1e-3);
      const Eigen::MatrixXd D = B.dense();
      const Vec x = rng.vec(d + 1), y = rng.vec(d + 2);
      worst = std::max(worst, (B.apply(x) - D * x).cwiseAbs().maxCoeff());
      worst = std::max(worst, (B.apply_t(y) - D.transpose() * y).cwiseAbs().maxCoeff());
    }
    return Property{"", worst <= 1e-14, "max abs error " + num(worst)};
  });
  check("chain_quadratic_identity", [] {
    double worst = 0;
    for (int d : {1, 3, 8}) {
      instances::ChainMatrix B(d, 0.01);
      Eigen::MatrixXd M = B.dense().transpose() * B.dense();
      M(d, d) -= 1.0;
      worst = std::max(worst,
                       (M - instances::chain_quadratic(d, 0.01)).cwiseAbs().maxCoeff());
    }
    return Property{"", worst <= 1e-14, "max abs error " + num(worst)};
  });
  for (int d : {1, 5, 20}) {
    check("gradient_fd_chain_d" + std::to_string(d), [d] {
      auto inst = instances::make_chain_instance(chain_params(d));
      const double e = max_fd_error(*inst, 50, 1.0, 11 + d);
      return Property{"", e <= 1e-5, "max rel error " + num(e)};
    });
  }
  for (auto [n, d] : {std::pair{2, 3}, std::pair{4, 6}}) {
    check("gradient_fd_finite_sum_n" + std::to_string(n) + "_d" + std::to_string(d),
          [n, d] {
            const auto spec = finite_sum_spec(n, d);
            auto inst = instances::make_finite_sum_instance(spec);
            const double e = max_fd_error(*inst, 50, spec.eta, 21 + n);
            return Property{"", e <= 1e-5, "max rel error " + num(e)};
          });
  }
  check("gradient_fd_case1", [] {
    auto inst = instances::make_case1_instance(4, 1.0, 0.1, 1.0, 8);
    const double e = max_fd_error(*inst, 50, 1.0, 31);
    return Property{"", e <= 1e-5, "max rel error " + num(e)};
  });
  check("gradient_fd_quadratic", [] {
    auto q = random_scsc(3, 4, 5);
    const double e = max_fd_error(*q, 20, 1.0, 41);
    return Property{"", e <= 1e-6, "max rel error " + num(e)};
  });
  check("primal_identity_chain", [] {
    auto inst = instances::make_chain_instance(chain_params(8));
    const double e = max_primal_identity_error(*inst, 200, 1.0, 51);
    return Property{"", e <= 1e-10, "max rel error " + num(e)};
  });
  check("primal_identity_finite_sum", [] {
    const auto spec = finite_sum_spec(4, 6);
    auto inst = instances::make_finite_sum_instance(spec);
    const double e = max_primal_identity_error(*inst, 200, spec.eta, 52);
    return Property{"", e <= 1e-10, "max rel error " + num(e)};
  });
  check("primal_identity_case1", [] {
    auto inst = instances::make_case1_instance(4, 1.0, 0.1, 1.0, 8);
    const double e = max_primal_identity_error(*inst, 200, 1.0, 53);
    return Property{"", e <= 1e-10, "max rel error " + num(e)};
  });
  check("primal_gradient_matches_difference", [] {
    auto inst = instances::make_chain_instance(chain_params(6));
    Rng rng(61);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      Vec x = rng.vec(inst->dim_x());
      const Vec g = inst->primal_gradient(x);
      for (Index j = 0; j < x.size(); ++j) {
        const double s = x[j];
        x[j] = s + 1e-6;
        const double fp = inst->primal_value(x);
        x[j] = s - 1e-6;
        const double fm = inst->primal_value(x);
        x[j] = s;
        worst = std::max(worst, std::abs((fp - fm) / 2e-6 - g[j]) / (1 + std::abs(g[j])));
      }
    }
    return Property{"", worst <= 1e-6, "max rel error " + num(worst)};
  });
  check("best_response_is_stationary", [] {
    const auto spec = finite_sum_spec(2, 3);
    auto inst = instances::make_finite_sum_instance(spec);
    Rng rng(62);
    double worst = 0;
    Vec gx, gy;
    for (int k = 0; k < 50; ++k) {
      const Vec x = rng.vec(inst->dim_x(), spec.eta);
      inst->gradient(x, inst->best_response(x), gx, gy);
      worst = std::max(worst, gy.norm() / (1 + gx.norm()));
    }
    return Property{"", worst <= 1e-12, "max |grad_y| " + num(worst)};
  });
  for (char c : {'a', 'b', 'c'}) {
    check(std::string("zero_chain_case_") + c, [c] {
      const int bad = zero_chain_violations(c, 20, 100, 70 + c);
      return Property{"", bad == 0, std::to_string(bad) + " violations in 100 draws"};
    });
  }
  check("gradient_floor_on_inactive_tail", [] {
    const ChainParams p = chain_params(10);
    auto inst = instances::make_chain_instance(p);
    const double floor =
        p.lambda1 * p.lambda1 / (8 * p.lambda2) * std::pow(p.alpha, 0.75);
    Rng rng(81);
    std::uniform_real_distribution<double> scale(-3.0, 1.0);
    int bad = 0;
    double least = INFINITY;
    for (int k = 0; k < 1000; ++k) {
      Vec x = rng.vec(inst->dim_x(), std::pow(10.0, scale(rng.engine)));
      x[p.d - 1] = 0;
      x[p.d] = 0;
      const double g = inst->primal_gradient(x).norm();
      least = std::min(least, g / floor);
      if (g < floor) ++bad;
    }
    return Property{"", bad == 0,
                    std::to_string(bad) + " violations, min ratio " + num(least)};
  });
  check("scaled_floor_equals_epsilon", [] {
    const auto spec = deterministic_spec(10);
    const double rel = std::abs(spec.gradient_floor() - spec.epsilon) / spec.epsilon;
    return Property{"", rel <= 1e-12, "relative difference " + num(rel)};
  });
  check("spec_derivation_example", [] {
    const auto s = instances::derive_spec(Mode::deterministic, 10, 1, 1, 0.05);
    const bool ok = std::abs(s.lambda1 - 5) < 1e-15 && std::abs(s.lambda2 - 0.5) < 1e-15 &&
                    std::abs(s.alpha - 1e-3) < 1e-18;
    return Property{"", ok, "lambda = (" + num(s.lambda1) + ", " + num(s.lambda2) +
                                "), alpha = " + num(s.alpha)};
  });
  check("epsilon_for_dimension_inverts_floor_formula", [] {
    bool ok = true;
    for (int d : {1, 3, 10, 57}) {
      ok = ok && deterministic_spec(d).d == d;
      ok = ok && finite_sum_spec(4, d).d_formula >= d &&
           finite_sum_spec(4, d).d_formula < d + 1;
    }
    return Property{"", ok, ok ? "d recovered" : "d mismatch"};
  });
  check("lipschitz_sample_within_L", [] {
    const auto spec = deterministic_spec(10, 16);
    auto inst = instances::make_deterministic_instance(spec);
    const auto est = instances::estimate_smoothness(*inst, 2000, 91, spec.eta);
    return Property{"", est.lipschitz <= spec.L * (1 + 1e-6),
                    "estimate " + num(est.lipschitz) + " vs L " + num(spec.L)};
  });
  check("averaged_smoothness_within_L", [] {
    const auto spec = finite_sum_spec(4, 6);
    auto inst = instances::make_finite_sum_instance(spec);
    const auto est = instances::estimate_smoothness(*inst, 2000, 92, spec.eta);
    return Property{"", est.averaged <= spec.L * (1 + 1e-6),
                    "estimate " + num(est.averaged) + " vs L " + num(spec.L)};
  });
  check("subproblem_averaged_smoothness_bound", [] {
    const auto spec = finite_sum_spec(4, 6);
    auto inst = instances::make_finite_sum_instance(spec);
    Rng rng(93);
    auto aux = catalyst::build_aux_problem(*inst, rng.vec(inst->dim_x(), spec.eta));
    const double tau = spec.L - spec.mu;
    auto sub = catalyst::build_subproblem(*aux, tau, rng.vec(inst->dim_y(), spec.eta));
    const auto est = instances::estimate_smoothness(*sub, 2000, 94, spec.eta);
    const double bound = std::sqrt(2.0) * (spec.L + std::max(2 * spec.L, tau));
    return Property{"", est.averaged <= bound * (1 + 1e-6),
                    "estimate " + num(est.averaged) + " vs bound " + num(bound)};
  });
  check("gda_converges_on_scsc_quadratic",
        [] { return converges_on_quadratic("", solvers::SolverKind::gda, 1); });
  check("eg_converges_on_scsc_quadratic",
        [] { return converges_on_quadratic("", solvers::SolverKind::eg, 1); });
  check("ogda_converges_on_scsc_quadratic",
        [] { return converges_on_quadratic("", solvers::SolverKind::ogda, 1); });
  check("svrg_converges_on_scsc_finite_sum",
        [] { return converges_on_quadratic("", solvers::SolverKind::svrg, 4); });
  check("gap_sandwich_along_eg", [] {
    auto q = random_scsc(1, 4, 8);
    const Constants c = q->constants();
    auto stepper = solvers::make_stepper(solvers::SolverKind::eg, *q, {}, q->zero_point());
    int bad = 0;
    for (int k = 0; k < 200; ++k) {
      const SaddlePoint& z = stepper->point();
      const Gradient& g = stepper->gradient_at_point();
      const double gap = q->gap(z.x, z.y);
      const double upper =
          g.x.squaredNorm() / (2 * c.mu_x) + g.y.squaredNorm() / (2 * c.mu);
      if (gap < -1e-12 || gap > upper * (1 + 1e-9) + 1e-14) ++bad;
      stepper->step();
    }
    return Property{"", bad == 0, std::to_string(bad) + " violations in 200 iterates"};
  });
  check("catalyst_solves_ncsc_toy", [] {
    instances::QuadraticComponent c;
    c.A = Eigen::MatrixXd::Constant(1, 1, -0.5);
    c.B = Eigen::MatrixXd::Constant(1, 1, 2.0);
    c.C = Eigen::MatrixXd::Constant(1, 1, 2.0);
    c.a = Vec::Zero(1);
    c.c = Vec::Zero(1);
    instances::QuadraticProblem q({c}, Constants{2, 2, 0});
    catalyst::CatalystConfig cfg;
    cfg.T_max = 200;
    cfg.record_inner = false;
    SaddlePoint start{Vec::Ones(1), Vec::Zero(1)};
    const auto r = catalyst::catalyst_run(q, cfg, start);
    const double g = r.trace.rounds.back().grad_phi_norm;
    return Property{"", g <= 1e-8, "final |grad Phi| " + num(g)};
  });
  check("catalyst_exit_criterion_holds", [] {
    const auto spec = deterministic_spec(6);
    auto inst = instances::make_deterministic_instance(spec);
    catalyst::CatalystConfig cfg;
    cfg.T_max = 30;
    cfg.record_inner = false;
    const auto r = catalyst::catalyst_run(*inst, cfg, inst->zero_point());
    int bad = 0;
    for (const auto& round : r.trace.rounds)
      if (round.exit_grad_sq > round.alpha * round.entry_grad_sq) ++bad;
    return Property{"", bad == 0,
                    std::to_string(bad) + " of " +
                        std::to_string(r.trace.rounds.size()) + " rounds violate"};
  });
  check("moreau_matches_closed_form", [] {
    auto q = random_scsc(1, 3, 9);
    const auto& m = q->mean();
    const Eigen::MatrixXd Cinv = m.C.inverse();
    const Eigen::MatrixXd P = m.A + m.B * Cinv * m.B.transpose();
    const Vec p = m.a - m.B * Cinv * m.c;
    const double L = q->constants().L;
    Rng rng(95);
    double worst = 0;
    for (int k = 0; k < 5; ++k) {
      const Vec x = rng.vec(3);
      const Eigen::MatrixXd M = P + 2 * L * Eigen::MatrixXd::Identity(3, 3);
      const Vec prox = M.ldlt().solve(2 * L * x - p);
      const double exact = 2 * L * (x - prox).norm();
      const auto r = catalyst::moreau_stationarity(*q, x, 1e-9);
      worst = std::max(worst, std::abs(r.value - exact));
    }
    return Property{"", worst <= 1e-8, "max abs error " + num(worst)};
  });
  check("lower_bound_deterministic_floor", [] {
    const auto spec = deterministic_spec(10);
    metrics::LowerBoundOptions options;
    options.budget = 20000;
    const auto report = metrics::verify_lower_bound(
        spec,
        {metrics::LbAlgorithm::gda, metrics::LbAlgorithm::alt_gda,
         metrics::LbAlgorithm::eg, metrics::LbAlgorithm::ogda,
         metrics::LbAlgorithm::catalyst_eg},
        spec.epsilon, options);
    double least = INFINITY;
    for (const auto& o : report.outcomes)
      least = std::min(least, o.min_calls_to_activation);
    return Property{"", report.passed(),
                    "branch " + report.branch + ", fewest calls to activation " +
                        num(least) + " vs floor " + num(spec.call_floor())};
  });
  check("lower_bound_finite_sum_floor", [] {
    const auto spec = finite_sum_spec(4, 6);
    metrics::LowerBoundOptions options;
    options.budget = 20000;
    options.seeds = {0, 1, 2, 3, 4};
    const auto report = metrics::verify_lower_bound(
        spec, {metrics::LbAlgorithm::svrg, metrics::LbAlgorithm::incremental},
        spec.epsilon, options);
    double least = INFINITY;
    for (const auto& o : report.outcomes)
      least = std::min(least, o.calls_to_activation);
    return Property{"", report.passed(),
                    "branch " + report.branch + ", least mean calls to activation " +
                        num(least) + " vs floor " + num(spec.call_floor())};
  });
  check("logged_activation_order", [] {
    const auto spec = deterministic_spec(8);
    auto [logged, log] = wrap_with_logging(instances::make_instance(spec));
    solvers::SolverConfig cfg;
    cfg.max_iters = 200;
    solvers::run(solvers::SolverKind::eg, *logged, cfg, logged->zero_point());
    bool ok = !log->first_protocol_violation;
    std::uint64_t prev = 0;
    for (const auto& a : log->x_activation) {
      ok = ok && a.call >= prev && a.call >= 2 * static_cast<std::uint64_t>(a.coordinate) + 1;
      prev = a.call;
    }
    return Property{"", ok,
                    std::to_string(log->x_activation.size()) + " x coordinates activated"};
  });
  check("fit_scaling_recovers_exponent", [] {
    std::vector<std::pair<double, double>> pts;
    for (double k : {4.0, 16.0, 64.0, 256.0}) pts.emplace_back(k, 3.0 * std::sqrt(k));
    const auto fit = metrics::fit_scaling(pts);
    return Property{"", std::abs(fit.slope - 0.5) <= 1e-9, "slope " + num(fit.slope)};
  });
  check("csv_round_trip", [] {
    std::vector<CsvRow> rows(3);
    Rng rng(97);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].suite = "single_run";
      rows[i].instance_id = "det-k4-n1-d4";
      rows[i].solver = "eg";
      rows[i].seed = i;
      rows[i].kappa = std::exp(rng.normal(rng.engine));
      rows[i].epsilon = 1.0 / 3.0;
      rows[i].oracle_calls = 1000 + i;
      rows[i].grad_phi_norm = i == 1 ? NAN : rng.normal(rng.engine) * 1e-7;
    }
    const auto back = parse_csv(format_csv(rows));
    bool ok = back.size() == rows.size();
    for (std::size_t i = 0; ok && i < rows.size(); ++i) ok = same_row(rows[i], back[i]);
    return Property{"", ok, ok ? "3 rows identical" : "rows differ"};
  });
  check("spec_file_round_trip", [] {
    const auto spec = deterministic_spec(7, 9.0);
    const auto back = parse_spec(format_spec(spec));
    const bool ok = back.d == spec.d && back.eta == spec.eta &&
                    back.alpha == spec.alpha && back.epsilon == spec.epsilon;
    return Property{"", ok, "d = " + std::to_string(back.d)};
  });
  return props;
}

std::string format_properties(const std::vector<Property>& properties) {
  std::ostringstream os;
  int passed = 0;
  for (const auto& p : properties) {
    os << (p.passed ? "PASS " : "FAIL ") << p.name << ": " << p.detail << "\n";
    passed += p.passed ? 1 : 0;
  }
  os << passed << "/" << properties.size() << " properties passed\n";
  return os.str();
}

bool all_passed(const std::vector<Property>& properties) {
  for (const auto& p : properties)
    if (!p.passed) return false;
  return !properties.empty();
}

}  // namespace ncsc::harness
