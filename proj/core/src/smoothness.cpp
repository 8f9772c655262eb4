#include <cmath>
#include <random>

#include "ncsc/instances.hpp"

namespace ncsc::instances {

SmoothnessEstimate estimate_smoothness(const SaddleProblem& problem,
                                       int sample_count, std::uint64_t seed,
                                       double scale, const SaddlePoint* center) {
  if (sample_count < 1) throw Error("sample_count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> log_radius(-3.0, 0.0);
  const Index dx = problem.dim_x(), dy = problem.dim_y();
  auto draw = [&](Index n) {
    Vec v(n);
    for (Index j = 0; j < n; ++j) v[j] = normal(rng);
    return v;
  };
  const int n = problem.n_components();
  SmoothnessEstimate est;
  Vec gx1, gy1, gx2, gy2;
  for (int s = 0; s < sample_count; ++s) {
    SaddlePoint z1{scale * draw(dx), scale * draw(dy)};
    if (center) {
      z1.x += center->x;
      z1.y += center->y;
    }
    const double r = scale * std::pow(10.0, log_radius(rng));
    SaddlePoint z2{z1.x + r * draw(dx), z1.y + r * draw(dy)};
    const double dxn = (z1.x - z2.x).norm(), dyn = (z1.y - z2.y).norm();
    const double dz2 = dxn * dxn + dyn * dyn;
    if (dz2 == 0) continue;

    problem.gradient(z1.x, z1.y, gx1, gy1);
    problem.gradient(z2.x, z2.y, gx2, gy2);
    const double lip =
        std::max((gx1 - gx2).norm(), (gy1 - gy2).norm()) / (dxn + dyn);
    est.lipschitz = std::max(est.lipschitz, lip);

    double avg = 0.0;
    if (n == 1) {
      avg = (gx1 - gx2).squaredNorm() + (gy1 - gy2).squaredNorm();
    } else {
      for (int i = 0; i < n; ++i) {
        problem.component_gradient(i, z1.x, z1.y, gx1, gy1);
        problem.component_gradient(i, z2.x, z2.y, gx2, gy2);
        avg += (gx1 - gx2).squaredNorm() + (gy1 - gy2).squaredNorm();
      }
      avg /= n;
    }
    est.averaged = std::max(est.averaged, std::sqrt(avg / dz2));
  }
  return est;
}

}  // namespace ncsc::instances
