#pragma once

#include <memory>
#include <random>
#include <vector>

#include "ncsc/ncsc.hpp"

namespace ncsc::testing {

struct Rng {
  std::mt19937_64 engine;
  std::normal_distribution<double> normal;

  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double operator()() { return normal(engine); }
  Vec vec(Index n, double scale = 1.0) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = scale * normal(engine);
    return v;
  }
  SaddlePoint point(const SaddleProblem& p, double scale = 1.0) {
    return {vec(p.dim_x(), scale), vec(p.dim_y(), scale)};
  }
};

inline std::shared_ptr<instances::QuadraticProblem> random_scsc(int n, int dim,
                                                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<instances::QuadraticComponent> comps;
  for (int i = 0; i < n; ++i) {
    instances::QuadraticComponent c;
    Eigen::MatrixXd G = Eigen::MatrixXd::NullaryExpr(dim, dim, [&] { return 0.3 * rng(); });
    Eigen::MatrixXd H = Eigen::MatrixXd::NullaryExpr(dim, dim, [&] { return 0.3 * rng(); });
    c.A = Eigen::MatrixXd::Identity(dim, dim) + G * G.transpose();
    c.C = Eigen::MatrixXd::Identity(dim, dim) + H * H.transpose();
    c.B = Eigen::MatrixXd::NullaryExpr(dim, dim, [&] { return 0.5 * rng(); });
    c.a = rng.vec(dim);
    c.c = rng.vec(dim);
    comps.push_back(std::move(c));
  }
  return std::make_shared<instances::QuadraticProblem>(std::move(comps));
}

// f(x, y) = -x²/4 + 2xy - y² with L = μ = 2.
inline std::shared_ptr<instances::QuadraticProblem> ncsc_toy() {
  instances::QuadraticComponent c;
  c.A = Eigen::MatrixXd::Constant(1, 1, -0.5);
  c.B = Eigen::MatrixXd::Constant(1, 1, 2.0);
  c.C = Eigen::MatrixXd::Constant(1, 1, 2.0);
  c.a = Vec::Zero(1);
  c.c = Vec::Zero(1);
  return std::make_shared<instances::QuadraticProblem>(
      std::vector<instances::QuadraticComponent>{c}, Constants{2, 2, 0});
}

inline instances::ChainParams chain_params(int d) {
  return {d, 0.5, 0.05, 1e-3, 1.0};
}

inline instances::HardInstanceSpec deterministic_spec(int d, double kappa = 4.0) {
  const double eps = instances::epsilon_for_dimension(
      instances::Mode::deterministic, 1.0, 1.0 / kappa, 1.0, d);
  return instances::derive_spec(instances::Mode::deterministic, 1.0, 1.0 / kappa,
                                1.0, eps);
}

inline instances::HardInstanceSpec finite_sum_spec(int n, int d, double mu = 0.0) {
  const double L = 1.0;
  if (mu == 0.0) mu = 1.0 / (4.0 * n);
  const double eps = instances::epsilon_for_dimension(instances::Mode::finite_sum, L,
                                                      mu, 1.0, d, n);
  return instances::derive_spec(instances::Mode::finite_sum, L, mu, 1.0, eps, n, d);
}

}  // namespace ncsc::testing
