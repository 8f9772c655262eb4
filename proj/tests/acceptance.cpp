#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ncsc/harness/cli.hpp"
#include "ncsc/harness/suites.hpp"
#include "support.hpp"

namespace {

using namespace ncsc;
using instances::Mode;
using metrics::LbAlgorithm;
using testing::Rng;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_fd_error(const SaddleProblem& p, double scale, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k)
    worst = std::max(worst, finite_difference_check(p, rng.point(p, scale), 1e-6));
  return worst;
}

double max_identity_error(const SaddleProblem& p, double scale, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Vec x = rng.vec(p.dim_x(), scale);
    const double phi = p.primal_value(x);
    worst = std::max(worst, std::abs(phi - p.value(x, p.best_response(x))) /
                                (1 + std::abs(phi)));
  }
  return worst;
}

struct Family {
  std::string name;
  ProblemPtr problem;
  double scale;
};

std::vector<Family> families() {
  std::vector<Family> out;
  for (int d : {1, 5, 20})
    out.push_back({"F_" + std::to_string(d),
                   instances::make_chain_instance(testing::chain_params(d)), 1.0});
  for (int n : {2, 4})
    for (int d : {3, 6}) {
      const auto spec = testing::finite_sum_spec(n, d);
      out.push_back({"fbar_n" + std::to_string(n) + "_d" + std::to_string(d),
                     instances::make_finite_sum_instance(spec), spec.eta});
    }
  out.push_back({"case1", instances::make_case1_instance(4, 1.0, 0.1, 1.0, 8), 1.0});
  return out;
}

Outcome gradient_correctness() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::uint64_t seed = 100;
  for (const auto& f : families()) worst = std::max(worst, max_fd_error(*f.problem, f.scale, ++seed));
  const double secs = seconds_since(t0);
  return {worst <= 1e-5 && secs < 5.0,
          "max rel error " + num(worst) + " <= 1e-5, " + num(secs) + " s < 5 s"};
}

Outcome primal_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::uint64_t seed = 200;
  for (const auto& f : families())
    worst = std::max(worst, max_identity_error(*f.problem, f.scale, ++seed));
  const double secs = seconds_since(t0);
  return {worst <= 1e-10 && secs < 5.0,
          "max rel error " + num(worst) + " <= 1e-10, " + num(secs) + " s < 5 s"};
}

bool within(const Vec& v, const std::vector<char>& allowed) {
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0.0 && !allowed[i]) return false;
  return true;
}

// X_k: first k coordinates of x. Y_k: last k + 1 coordinates of y (empty for k = 0).
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
    if (support[i]) v[i] = rng();
  return v;
}

Outcome zero_chain() {
  const int d = 20;
  auto inst = instances::make_chain_instance(testing::chain_params(d));
  const Index dx = inst->dim_x(), dy = inst->dim_y();
  Rng rng(300);
  std::uniform_int_distribution<int> pick(1, d);
  int bad[3] = {0, 0, 0};
  Vec gx, gy;
  for (int s = 0; s < 100; ++s) {
    inst->gradient(Vec::Zero(dx), Vec::Zero(dy), gx, gy);
    if (!within(gx, x_set(dx, 1)) || !within(gy, y_set(dy, 0))) ++bad[0];

    int k = pick(rng.engine);
    inst->gradient(fill(rng, x_set(dx, k)), fill(rng, y_set(dy, k)), gx, gy);
    if (!within(gx, x_set(dx, k + 1)) || !within(gy, y_set(dy, k))) ++bad[1];

    k = pick(rng.engine);
    inst->gradient(fill(rng, x_set(dx, k + 1)), fill(rng, y_set(dy, k)), gx, gy);
    if (!within(gx, x_set(dx, k + 1)) || !within(gy, y_set(dy, k + 1))) ++bad[2];
  }
  return {bad[0] + bad[1] + bad[2] == 0,
          "violations a/b/c = " + std::to_string(bad[0]) + "/" + std::to_string(bad[1]) +
              "/" + std::to_string(bad[2]) + " of 100 each"};
}

Outcome gradient_floor() {
  const auto p = testing::chain_params(10);
  auto inst = instances::make_chain_instance(p);
  const double floor = p.lambda1 * p.lambda1 / (8 * p.lambda2) * std::pow(p.alpha, 0.75);
  Rng rng(400);
  std::uniform_real_distribution<double> decade(-3.0, 1.0);
  int bad = 0;
  double least = INFINITY;
  for (int k = 0; k < 1000; ++k) {
    Vec x = rng.vec(inst->dim_x(), std::pow(10.0, decade(rng.engine)));
    x[p.d - 1] = 0.0;
    x[p.d] = 0.0;
    const double g = inst->primal_gradient(x).norm();
    least = std::min(least, g / floor);
    if (g < floor) ++bad;
  }
  const auto spec = testing::deterministic_spec(10);
  const double rel = std::abs(spec.gradient_floor() - spec.epsilon) / spec.epsilon;
  return {bad == 0 && rel <= 1e-12,
          std::to_string(bad) + " violations in 1000, min ratio " + num(least) +
              ", scaled floor vs epsilon rel " + num(rel) + " <= 1e-12"};
}

Outcome lower_bound() {
  const auto det = testing::deterministic_spec(10);
  metrics::LowerBoundOptions options;
  options.budget = 20000;
  const auto dr = metrics::verify_lower_bound(
      det,
      {LbAlgorithm::gda, LbAlgorithm::alt_gda, LbAlgorithm::eg, LbAlgorithm::ogda,
       LbAlgorithm::catalyst_eg},
      det.epsilon, options);
  double det_least = INFINITY;
  for (const auto& o : dr.outcomes) det_least = std::min(det_least, o.min_calls_to_epsilon);

  const auto fsum = testing::finite_sum_spec(4, 6);
  options.seeds.clear();
  for (std::uint64_t s = 0; s < 20; ++s) options.seeds.push_back(s);
  const auto fr = metrics::verify_lower_bound(
      fsum, {LbAlgorithm::svrg, LbAlgorithm::catalyst_svrg, LbAlgorithm::incremental},
      fsum.epsilon, options);
  double fs_least = INFINITY, fs_activation = INFINITY;
  for (const auto& o : fr.outcomes) {
    fs_least = std::min(fs_least, o.calls_to_epsilon);
    fs_activation = std::min(fs_activation, o.calls_to_activation);
  }

  return {dr.passed() && fr.passed() && det_least >= 19 && fs_least >= 22,
          "deterministic d=10 fewest calls " + num(det_least) +
              " >= 19; finite-sum n=4 d=6 least mean calls over 20 seeds " +
              num(fs_least) + " >= 22 (to activation " + num(fs_activation) + ")"};
}

Outcome average_smoothness() {
  const auto spec = testing::finite_sum_spec(4, 6);
  auto inst = instances::make_finite_sum_instance(spec);
  const auto est = instances::estimate_smoothness(*inst, 10000, 600, spec.eta);
  const double as_sq = est.averaged * est.averaged;

  Rng rng(601);
  auto aux = catalyst::build_aux_problem(*inst, rng.vec(inst->dim_x(), spec.eta));
  const double tau = spec.L - spec.mu;
  auto sub = catalyst::build_subproblem(*aux, tau, rng.vec(inst->dim_y(), spec.eta));
  const auto sub_est = instances::estimate_smoothness(*sub, 10000, 602, spec.eta);
  const double sub_sq = sub_est.averaged * sub_est.averaged;
  const double tau_max = std::max(2 * spec.L, tau);
  const double sub_bound = 2 * (spec.L + tau_max) * (spec.L + tau_max);

  const double L2 = spec.L * spec.L;
  return {as_sq <= L2 * (1 + 1e-6) && sub_sq <= sub_bound * (1 + 1e-6),
          "max AS ratio " + num(as_sq) + " <= L^2 = " + num(L2) + "; subproblem " +
              num(sub_sq) + " <= " + num(sub_bound)};
}

Outcome catalyst_outer_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = testing::deterministic_spec(6, 16.0);
  auto inst = instances::make_deterministic_instance(spec);
  const double L = spec.L;

  catalyst::CatalystConfig cfg;
  cfg.T_max = 200;
  cfg.record_inner = false;
  const auto run = catalyst::catalyst_run(*inst, cfg, inst->zero_point());
  const auto& tr = run.trace;
  const Vec& x0 = tr.start.x;

  double phi_min = inst->primal_value(x0);
  for (const auto& r : tr.rounds) phi_min = std::min(phi_min, inst->primal_value(r.x));
  const double step = 1.0 / (L + L * L / spec.mu);
  for (const Vec* from : {&x0, &tr.rounds.back().x}) {
    Vec x = *from;
    for (int k = 0; k < 200000; ++k) x -= step * inst->primal_gradient(x);
    phi_min = std::min(phi_min, inst->primal_value(x));
  }
  const double Delta = inst->primal_value(x0) - phi_min;
  const double Dy = (tr.start.y - inst->best_response(x0)).squaredNorm();

  const auto& sc = cfg.schedule;
  const double accuracy = 1e-8;
  int primal_bad = 0, moreau_bad = 0;
  double primal_sum = 0.0, moreau_sum = 0.0, worst_primal = 0.0, worst_moreau = 0.0;
  Vec xt = x0;
  for (std::size_t t = 0; t < tr.rounds.size(); ++t) {
    const double T = static_cast<double>(t + 1);
    const double g = tr.rounds[t].grad_phi_norm;
    primal_sum += g * g;
    const double primal_bound = (sc.outer_delta * L * Delta + sc.outer_dy * L * Dy) / T;
    worst_primal = std::max(worst_primal, (primal_sum / T) / primal_bound);
    if (primal_sum / T > primal_bound) ++primal_bad;

    const auto m = catalyst::moreau_stationarity(*inst, xt, accuracy);
    const double lower = std::max(0.0, m.value - accuracy);
    moreau_sum += lower * lower;
    const double moreau_bound = sc.moreau_delta * L * Delta + sc.moreau_dy * L * Dy;
    worst_moreau = std::max(worst_moreau, moreau_sum / moreau_bound);
    if (moreau_sum > moreau_bound) ++moreau_bad;
    xt = tr.rounds[t].x;
  }
  const double secs = seconds_since(t0);
  return {primal_bad == 0 && moreau_bad == 0 && !tr.rounds.empty() && secs < 60.0,
          "T = 1.." + std::to_string(tr.rounds.size()) + ", max primal ratio " +
              num(worst_primal) + ", max Moreau ratio " + num(worst_moreau) +
              " (Delta " + num(Delta) + ", D_y " + num(Dy) + "), " + num(secs) +
              " s < 60 s"};
}

Outcome kappa_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  harness::ExperimentConfig c;
  c.suite = harness::Suite::kappa_sweep;
  c.solvers = {"catalyst-eg", "gda"};
  const auto r = harness::kappa_sweep(c);
  double cat = NAN, gda = NAN;
  for (const auto& f : r.fits) {
    if (f.solver == "catalyst-eg") cat = f.fit.slope;
    if (f.solver == "gda") gda = f.fit.slope;
  }
  const double secs = seconds_since(t0);
  return {cat <= 0.8 && gda >= 1.2 && secs < 600.0,
          "slope catalyst-eg " + num(cat) + " <= 0.8, gda " + num(gda) +
              " >= 1.2, 5 seeds, " + num(secs) + " s < 600 s"};
}

Outcome subsolver_rates() {
  const auto spec = testing::finite_sum_spec(4, 6);
  auto inst = instances::make_finite_sum_instance(spec);
  Rng rng(900);
  auto aux = catalyst::build_aux_problem(*inst, rng.vec(inst->dim_x(), spec.eta));
  std::string detail;
  bool ok = true;
  for (auto kind : {solvers::SolverKind::eg, solvers::SolverKind::ogda,
                    solvers::SolverKind::svrg}) {
    const double tau = kind == solvers::SolverKind::svrg
                           ? std::max(spec.L / std::sqrt(spec.n) - spec.mu, 0.0)
                           : spec.L - spec.mu;
    auto sub = catalyst::build_subproblem(*aux, tau, rng.vec(inst->dim_y(), spec.eta));
    solvers::SolverConfig cfg;
    cfg.max_iters = 10000000;
    cfg.seed = 1;
    const SaddlePoint start = rng.point(*sub, spec.eta);
    const double g0 = sub->gradient(start).norm_sq();
    std::vector<double> xs, ys;
    for (int e = 1; e <= 12; ++e) {
      const double thr = g0 * std::pow(10.0, -0.5 * e);
      const auto r = solvers::solve_until(*sub, kind, cfg, start, thr);
      xs.push_back(std::log(g0 / thr));
      ys.push_back(static_cast<double>(r.iterations));
    }
    const double r2 = metrics::fit_linear(xs, ys).r2;
    ok = ok && r2 >= 0.95;
    detail += (detail.empty() ? "" : ", ") + solvers::to_string(kind) + " R^2 " + num(r2);
  }
  return {ok, detail + " >= 0.95 over 6 decades"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "ncsc_acceptance_determinism";
  std::string csv[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path dir = root / std::to_string(k);
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string out = dir.string();
    const char* argv[] = {"ncsc",     "bench",  "--suite", "kappa_sweep", "--kappas",
                          "4,8",      "--seeds", "0,1",    "--solvers",   "catalyst-eg,gda",
                          "--jobs",   "2",       "--out",  out.c_str()};
    std::ostringstream sink;
    const int code = harness::cli_main(static_cast<int>(std::size(argv)), argv, sink, sink);
    if (code != harness::kExitOk) return {false, "bench exited " + std::to_string(code)};
    csv[k] = slurp(dir / "kappa_sweep.csv");
  }
  fs::remove_all(root);
  return {!csv[0].empty() && csv[0] == csv[1],
          std::to_string(csv[0].size()) + " bytes, identical = " +
              (csv[0] == csv[1] ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gradient correctness", gradient_correctness},
      {"primal identity", primal_identity},
      {"zero-chain exactness", zero_chain},
      {"gradient-norm floor", gradient_floor},
      {"lower-bound floor", lower_bound},
      {"average smoothness", average_smoothness},
      {"catalyst outer bound", catalyst_outer_bound},
      {"kappa-scaling separation", kappa_scaling},
      {"subsolver linear rates", subsolver_rates},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s %2d %s: %s\n", o.passed ? "PASS" : "FAIL", id,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
