#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

namespace ncsc::solvers {
void PrintTo(SolverKind kind, std::ostream* os) { *os << to_string(kind); }
}  // namespace ncsc::solvers

namespace ncsc {
namespace {

using solvers::SolverKind;

std::shared_ptr<instances::QuadraticProblem> bilinear() {
  instances::QuadraticComponent c;
  c.A = Eigen::MatrixXd::Zero(1, 1);
  c.B = Eigen::MatrixXd::Identity(1, 1);
  c.C = Eigen::MatrixXd::Zero(1, 1);
  c.a = Vec::Zero(1);
  c.c = Vec::Zero(1);
  return std::make_shared<instances::QuadraticProblem>(
      std::vector<instances::QuadraticComponent>{c}, Constants{1, 1, 0});
}

double distance(const instances::QuadraticProblem& q, const SaddlePoint& z) {
  const SaddlePoint s = q.saddle_point();
  return std::sqrt((z.x - s.x).squaredNorm() + (z.y - s.y).squaredNorm());
}

TEST(Extragradient, BilinearContractionMatchesSpectralRadius) {
  auto q = bilinear();
  for (double s : {0.1, 0.3, 0.5}) {
    solvers::SolverConfig cfg;
    cfg.step_x = cfg.step_y = s;
    auto stepper = solvers::make_stepper(SolverKind::eg, *q, cfg, {Vec::Ones(1), Vec::Ones(1)});
    const double rho = std::sqrt(1 - s * s + s * s * s * s);
    for (int k = 0; k < 20; ++k) {
      const SaddlePoint before = stepper->point();
      stepper->step();
      const SaddlePoint& after = stepper->point();
      const double ratio = std::hypot(after.x[0], after.y[0]) /
                           std::hypot(before.x[0], before.y[0]);
      EXPECT_NEAR(ratio, rho, 1e-13) << "step " << s;
    }
  }
}

TEST(Gda, BilinearDiverges) {
  auto q = bilinear();
  solvers::SolverConfig cfg;
  cfg.step_x = cfg.step_y = 0.3;
  cfg.max_iters = 50;
  const auto r = solvers::run(SolverKind::gda, *q, cfg, {Vec::Ones(1), Vec::Ones(1)});
  EXPECT_NEAR(std::hypot(r.point.x[0], r.point.y[0]),
              std::sqrt(2.0) * std::pow(std::sqrt(1 + 0.09), 50), 1e-9);
}

class Converges : public ::testing::TestWithParam<SolverKind> {};

TEST_P(Converges, OnStronglyConvexConcaveQuadratic) {
  const SolverKind kind = GetParam();
  auto q = testing::random_scsc(kind == SolverKind::svrg ? 4 : 1, 4, 3);
  solvers::SolverConfig cfg;
  cfg.max_iters = kind == SolverKind::svrg ? 400 : 20000;
  cfg.seed = 5;
  const SaddlePoint start = q->zero_point();
  const auto r = solvers::run(kind, *q, cfg, start);
  EXPECT_LE(distance(*q, r.point), 1e-8 * distance(*q, start));
  EXPECT_EQ(r.iterations, cfg.max_iters);
}

INSTANTIATE_TEST_SUITE_P(All, Converges,
                         ::testing::Values(SolverKind::gda, SolverKind::alt_gda,
                                           SolverKind::eg, SolverKind::ogda,
                                           SolverKind::svrg),
                         [](const ::testing::TestParamInfo<SolverKind>& info) {
                           std::string name = solvers::to_string(info.param);
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

TEST(Solvers, OracleAccounting) {
  auto q = testing::random_scsc(4, 3, 1);
  solvers::SolverConfig cfg;
  cfg.max_iters = 10;
  EXPECT_EQ(solvers::run(SolverKind::gda, *q, cfg, q->zero_point()).oracle_calls, 40u);
  EXPECT_EQ(solvers::run(SolverKind::eg, *q, cfg, q->zero_point()).oracle_calls, 80u);
  EXPECT_EQ(solvers::run(SolverKind::ogda, *q, cfg, q->zero_point()).oracle_calls, 40u);
  cfg.max_iters = 2;
  cfg.epoch_length = 5;
  // Each epoch: one full gradient (4 units) and two component calls per step.
  EXPECT_EQ(solvers::run(SolverKind::svrg, *q, cfg, q->zero_point()).oracle_calls, 28u);
}

TEST(Solvers, StopPredicateIsCheckedBeforeEachStep) {
  auto q = testing::random_scsc(1, 3, 1);
  solvers::SolverConfig cfg;
  cfg.max_iters = 100;
  int checks = 0;
  cfg.stop_predicate = [&](const SaddlePoint&) { return ++checks > 3; };
  const auto r = solvers::run(SolverKind::eg, *q, cfg, q->zero_point());
  EXPECT_TRUE(r.stopped);
  EXPECT_EQ(r.iterations, 3u);
}

TEST(Solvers, DivergenceIsReported) {
  auto q = bilinear();
  solvers::SolverConfig cfg;
  cfg.step_x = cfg.step_y = 1e150;
  cfg.max_iters = 10;
  try {
    solvers::run(SolverKind::gda, *q, cfg, {Vec::Ones(1), Vec::Ones(1)});
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_GE(e.iteration(), 1u);
    EXPECT_LE(e.iteration(), 10u);
  }
}

TEST(Solvers, SvrgNeedsFiniteSum) {
  auto q = testing::random_scsc(1, 3, 1);
  EXPECT_THROW(solvers::run(SolverKind::svrg, *q, {}, q->zero_point()), Error);
}

TEST(Solvers, ParseNames) {
  for (auto k : {SolverKind::gda, SolverKind::alt_gda, SolverKind::eg, SolverKind::ogda,
                 SolverKind::svrg})
    EXPECT_EQ(solvers::parse_solver(solvers::to_string(k)), k);
  EXPECT_THROW(solvers::parse_solver("adam"), Error);
}

TEST(SolveUntil, ReturnsFirstIterateMeetingThreshold) {
  auto q = testing::random_scsc(1, 4, 2);
  solvers::SolverConfig cfg;
  cfg.max_iters = 100000;
  const auto r = solvers::solve_until(*q, SolverKind::eg, cfg, q->zero_point(), 1e-12);
  EXPECT_LE(r.gradient.norm_sq(), 1e-12);
  EXPECT_NEAR(q->gradient(r.point).norm_sq(), r.gradient.norm_sq(), 1e-20);
  cfg.max_iters = r.iterations - 1;
  EXPECT_THROW(solvers::solve_until(*q, SolverKind::eg, cfg, q->zero_point(), 1e-12),
               BudgetExceededError);
}

TEST(SolveUntil, ZeroIterationsWhenAlreadyStationary) {
  auto q = testing::random_scsc(1, 3, 2);
  const auto r = solvers::solve_until(*q, SolverKind::ogda, {}, q->saddle_point(), 1e-18);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.oracle_calls, 1u);
}

TEST(SolveUntil, LinearRateOverSixDecades) {
  for (auto kind : {SolverKind::eg, SolverKind::ogda, SolverKind::svrg}) {
    auto q = testing::random_scsc(kind == SolverKind::svrg ? 4 : 1, 4, 9);
    solvers::SolverConfig cfg;
    cfg.max_iters = 1000000;
    cfg.seed = 1;
    const double g0 = q->gradient(q->zero_point()).norm_sq();
    std::vector<double> xs, ys;
    for (int e = 1; e <= 12; ++e) {
      const double thr = g0 * std::pow(10.0, -e * 0.5);
      const auto r = solvers::solve_until(*q, kind, cfg, q->zero_point(), thr);
      xs.push_back(std::log(g0 / thr));
      ys.push_back(static_cast<double>(r.iterations));
    }
    EXPECT_GE(metrics::fit_linear(xs, ys).r2, 0.95) << solvers::to_string(kind);
  }
}

TEST(RateModel, IterationsForRatio) {
  const auto m = solvers::RateModel::extragradient(1.0, 0.1, 0.9);
  EXPECT_GE(m.effective(), 2.0);
  const double n = m.iterations_for(1e6);
  EXPECT_LE(std::pow(1 - 1 / m.effective(), n), 1e-6 * (1 + 1e-12));
  EXPECT_DOUBLE_EQ(solvers::RateModel{1.0}.effective(), 2.0);
}

}  // namespace
}  // namespace ncsc
