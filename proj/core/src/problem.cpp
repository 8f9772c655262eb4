#include "ncsc/problem.hpp"

#include <cmath>
#include <string>

namespace ncsc {

void SaddleProblem::component_gradient(int i, const Vec& x, const Vec& y,
                                       Vec& gx, Vec& gy) const {
  if (n_components() != 1 || i != 0)
    throw Error("component_gradient not implemented for this problem");
  gradient(x, y, gx, gy);
}

double SaddleProblem::primal_value(const Vec&) const {
  throw Error("problem has no closed-form primal");
}

void SaddleProblem::primal_gradient(const Vec&, Vec&) const {
  throw Error("problem has no closed-form primal");
}

void SaddleProblem::best_response(const Vec&, Vec&) const {
  throw Error("problem has no closed-form best response");
}

Gradient SaddleProblem::gradient(const SaddlePoint& z) const {
  Gradient g;
  gradient(z.x, z.y, g.x, g.y);
  return g;
}

Gradient SaddleProblem::component_gradient(int i, const SaddlePoint& z) const {
  Gradient g;
  component_gradient(i, z.x, z.y, g.x, g.y);
  return g;
}

Vec SaddleProblem::primal_gradient(const Vec& x) const {
  Vec g;
  primal_gradient(x, g);
  return g;
}

Vec SaddleProblem::best_response(const Vec& x) const {
  Vec y;
  best_response(x, y);
  return y;
}

void SaddleProblem::check_dims(const Vec& x, const Vec& y) const {
  if (x.size() != dim_x() || y.size() != dim_y())
    throw DimensionError("expected dimensions (" + std::to_string(dim_x()) +
                         ", " + std::to_string(dim_y()) + "), got (" +
                         std::to_string(x.size()) + ", " +
                         std::to_string(y.size()) + ")");
}

double finite_difference_check(const SaddleProblem& problem,
                               const SaddlePoint& point, double h) {
  if (!(h > 0)) throw Error("finite difference step must be positive");
  Gradient g = problem.gradient(point);
  double worst = 0.0;
  SaddlePoint z = point;
  auto probe = [&](Vec& v, Index j, double analytic) {
    const double saved = v[j];
    v[j] = saved + h;
    const double fp = problem.value(z);
    v[j] = saved - h;
    const double fm = problem.value(z);
    v[j] = saved;
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw NonFiniteError("non-finite objective value during finite differences");
    const double fd = (fp - fm) / (2 * h);
    worst = std::max(worst, std::abs(fd - analytic) / (1 + std::abs(analytic)));
  };
  for (Index j = 0; j < z.x.size(); ++j) probe(z.x, j, g.x[j]);
  for (Index j = 0; j < z.y.size(); ++j) probe(z.y, j, g.y[j]);
  return worst;
}

}  // namespace ncsc
