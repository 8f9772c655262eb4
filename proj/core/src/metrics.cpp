#include "ncsc/metrics.hpp"

#include <cmath>
#include <numeric>

#include "ncsc/catalyst.hpp"

namespace ncsc::metrics {

PrimalGradEstimate primal_grad_norm(const SaddleProblem& problem, const Vec& x,
                                    double inner_tolerance, PrimalMode mode) {
  if (!(inner_tolerance > 0)) throw Error("inner tolerance must be positive");
  PrimalGradEstimate est;
  const bool closed = mode == PrimalMode::closed_form ||
                      (mode == PrimalMode::automatic && problem.has_primal());
  if (closed) {
    est.value = problem.primal_gradient(x).norm();
    est.exact = true;
    return est;
  }
  auto ascent = catalyst::accelerated_ascent(problem, x,
                                             Vec::Zero(problem.dim_y()),
                                             inner_tolerance);
  Vec gx, gy;
  problem.gradient(x, ascent.y, gx, gy);
  const Constants c = problem.constants();
  est.value = gx.norm();
  est.slack = 2 * c.L * gy.norm() / c.mu;
  est.oracle_calls = ascent.oracle_calls +
                     static_cast<std::uint64_t>(problem.n_components());
  return est;
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error("linear fit needs at least two paired points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw Error("linear fit needs distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.residual = std::sqrt(ss_res / n);
  fit.r2 = syy > 0 ? 1 - ss_res / syy : 1.0;
  return fit;
}

LinearFit fit_scaling(const std::vector<std::pair<double, double>>& kappa_calls) {
  if (kappa_calls.size() < 4)
    throw Error("scaling fit needs at least 4 kappa values");
  std::vector<double> xs, ys;
  for (auto [k, c] : kappa_calls) {
    if (!(k > 0) || !(c > 0)) throw Error("scaling fit needs positive values");
    xs.push_back(std::log(k));
    ys.push_back(std::log(c));
  }
  return fit_linear(xs, ys);
}

}  // namespace ncsc::metrics
