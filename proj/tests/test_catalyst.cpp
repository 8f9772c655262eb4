#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

namespace ncsc {
namespace {

using catalyst::CatalystConfig;

TEST(Resolve, DefaultSchedule) {
  auto inst = instances::make_deterministic_instance(testing::deterministic_spec(5));
  const auto p = catalyst::resolve({}, *inst);
  EXPECT_DOUBLE_EQ(p.tau, 0.75);
  EXPECT_DOUBLE_EQ(p.q, 0.25);
  EXPECT_DOUBLE_EQ(p.rho, 0.45);
  EXPECT_NEAR(p.momentum, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.alpha_t, std::pow(0.25, 5) / 504, 1e-18);
  EXPECT_NEAR(p.alpha_0, std::pow(0.25, 5) / 576, 1e-18);
}

TEST(Resolve, SvrgRegularizationAndOverrides) {
  const auto spec = testing::finite_sum_spec(4, 3, 0.05);
  auto inst = instances::make_finite_sum_instance(spec);
  CatalystConfig cfg;
  cfg.subsolver = solvers::SolverKind::svrg;
  EXPECT_DOUBLE_EQ(catalyst::resolve(cfg, *inst).tau, 0.5 - 0.05);
  cfg.tau = 0.2;
  cfg.rho = 0.1;
  const auto p = catalyst::resolve(cfg, *inst);
  EXPECT_DOUBLE_EQ(p.tau, 0.2);
  EXPECT_DOUBLE_EQ(p.rho, 0.1);
  cfg.rho = 0.9;
  EXPECT_THROW(catalyst::resolve(cfg, *inst), Error);
}

TEST(Resolve, NoRegularizationWhenAlreadyWellConditioned) {
  auto toy = testing::ncsc_toy();
  const auto p = catalyst::resolve({}, *toy);
  EXPECT_EQ(p.tau, 0.0);
  EXPECT_EQ(p.q, 1.0);
}

TEST(AuxProblem, GradientsAndConstants) {
  const auto spec = testing::finite_sum_spec(2, 4);
  auto inst = instances::make_finite_sum_instance(spec);
  testing::Rng rng(1);
  auto aux = catalyst::build_aux_problem(*inst, rng.vec(inst->dim_x(), spec.eta));
  auto sub = catalyst::build_subproblem(*aux, 0.3, rng.vec(inst->dim_y(), spec.eta));
  for (int k = 0; k < 10; ++k) {
    const SaddlePoint z = rng.point(*inst, spec.eta);
    EXPECT_LE(finite_difference_check(*aux, z, 1e-6), 1e-5);
    EXPECT_LE(finite_difference_check(*sub, z, 1e-6), 1e-5);
    EXPECT_NEAR(aux->primal_value(z.x), aux->value(z.x, aux->best_response(z.x)),
                1e-10 * (1 + std::abs(aux->primal_value(z.x))));
  }
  EXPECT_DOUBLE_EQ(aux->constants().L, 3 * spec.L);
  EXPECT_DOUBLE_EQ(sub->constants().mu, spec.mu + 0.3);
  EXPECT_DOUBLE_EQ(sub->constants().L, std::sqrt(2.0) * 3 * spec.L);
  EXPECT_THROW(catalyst::build_aux_problem(*inst, Vec::Zero(2)), DimensionError);
  EXPECT_THROW(catalyst::build_subproblem(*aux, -1.0, Vec::Zero(inst->dim_y())), Error);
}

TEST(InnerLoop, StationaryStartExitsAfterOneCheck) {
  auto toy = testing::ncsc_toy();
  catalyst::AuxProblem aux(*toy, Vec::Zero(1));
  CatalystConfig cfg;
  const auto params = catalyst::resolve(cfg, *toy);
  const auto r = catalyst::inner_loop(aux, toy->zero_point(), cfg, params, 0.5, 0);
  EXPECT_EQ(r.K, 1);
  EXPECT_EQ(r.oracle_calls, 1u);
  EXPECT_EQ(r.entry_grad_sq, 0.0);
}

TEST(InnerLoop, ScheduleAndExitCriterion) {
  auto inst = instances::make_deterministic_instance(testing::deterministic_spec(6));
  testing::Rng rng(4);
  const SaddlePoint start = rng.point(*inst, 0.1);
  catalyst::AuxProblem aux(*inst, start.x);
  CatalystConfig cfg;
  const auto params = catalyst::resolve(cfg, *inst);
  const auto r = catalyst::inner_loop(aux, start, cfg, params, params.alpha_t, 1);
  ASSERT_EQ(static_cast<int>(r.rounds.size()), r.K);
  EXPECT_LE(r.exit_grad_sq, params.alpha_t * r.entry_grad_sq);
  for (const auto& round : r.rounds)
    EXPECT_NEAR(round.epsilon_k,
                std::sqrt(2.0) / 4 * std::pow(1 - params.rho, round.k) * r.entry_grad_sq,
                1e-15 * r.entry_grad_sq);
  std::uint64_t calls = 1;
  for (const auto& round : r.rounds) calls += round.oracle_calls + 1;
  EXPECT_EQ(r.oracle_calls, calls);
}

TEST(InnerLoop, BudgetExceeded) {
  auto inst = instances::make_deterministic_instance(testing::deterministic_spec(6));
  testing::Rng rng(5);
  const SaddlePoint start = rng.point(*inst, 0.1);
  catalyst::AuxProblem aux(*inst, start.x);
  CatalystConfig cfg;
  cfg.K_max = 2;
  const auto params = catalyst::resolve(cfg, *inst);
  try {
    catalyst::inner_loop(aux, start, cfg, params, 1e-30, 0);
    FAIL() << "expected budget error";
  } catch (const BudgetExceededError& e) {
    EXPECT_GT(e.best(), 0.0);
    EXPECT_LT(e.best(), 1.0);
  }
}

TEST(CatalystRun, SolvesNonconvexToy) {
  auto toy = testing::ncsc_toy();
  CatalystConfig cfg;
  cfg.T_max = 200;
  const auto r = catalyst::catalyst_run(*toy, cfg, {Vec::Ones(1), Vec::Zero(1)});
  EXPECT_LE(r.trace.rounds.back().grad_phi_norm, 1e-20);
  EXPECT_GE(r.trace.sampled_index, 1);
  EXPECT_LE(r.trace.sampled_index, 200);
  EXPECT_EQ(r.trace.rounds.size(), 200u);
}

TEST(CatalystRun, StopsAtTargetAndIsDeterministic) {
  const auto spec = testing::deterministic_spec(4);
  auto inst = instances::make_deterministic_instance(spec);
  CatalystConfig cfg;
  cfg.T_max = 100000;
  cfg.target_epsilon = spec.epsilon;
  cfg.record_inner = false;
  const auto a = catalyst::catalyst_run(*inst, cfg, inst->zero_point());
  const auto b = catalyst::catalyst_run(*inst, cfg, inst->zero_point());
  ASSERT_TRUE(a.reached_target);
  EXPECT_LE(a.trace.rounds.back().grad_phi_norm, spec.epsilon);
  for (std::size_t t = 0; t + 1 < a.trace.rounds.size(); ++t)
    EXPECT_GT(a.trace.rounds[t].grad_phi_norm, spec.epsilon);
  EXPECT_EQ(a.oracle_calls, b.oracle_calls);
  EXPECT_EQ(a.sampled_x, b.sampled_x);
  for (const auto& round : a.trace.rounds)
    EXPECT_LE(round.exit_grad_sq, round.alpha * round.entry_grad_sq);
}

TEST(CatalystRun, OgdaAndSvrgSubsolvers) {
  const auto spec = testing::finite_sum_spec(4, 3);
  auto inst = instances::make_finite_sum_instance(spec);
  for (auto kind : {solvers::SolverKind::ogda, solvers::SolverKind::svrg}) {
    CatalystConfig cfg;
    cfg.subsolver = kind;
    cfg.T_max = 100000;
    cfg.target_epsilon = spec.epsilon;
    cfg.record_inner = false;
    const auto r = catalyst::catalyst_run(*inst, cfg, inst->zero_point());
    EXPECT_TRUE(r.reached_target) << solvers::to_string(kind);
  }
}

TEST(AcceleratedAscent, ReachesTolerance) {
  auto q = testing::random_scsc(1, 4, 8);
  const Vec x = Vec::Ones(4);
  const auto r = catalyst::accelerated_ascent(*q, x, Vec::Zero(4), 1e-10);
  Vec gx, gy;
  q->gradient(x, r.y, gx, gy);
  EXPECT_LE(gy.norm(), 1e-10);
  EXPECT_LE((r.y - q->best_response(x)).norm(), 1e-9);
}

TEST(Moreau, MatchesClosedFormProx) {
  auto q = testing::random_scsc(1, 3, 9);
  const auto& m = q->mean();
  const Eigen::MatrixXd Cinv = m.C.inverse();
  const Eigen::MatrixXd P = m.A + m.B * Cinv * m.B.transpose();
  const Vec p = m.a - m.B * Cinv * m.c;
  const double L = q->constants().L;
  testing::Rng rng(2);
  for (int k = 0; k < 5; ++k) {
    const Vec x = rng.vec(3);
    const Vec prox = (P + 2 * L * Eigen::MatrixXd::Identity(3, 3)).ldlt().solve(2 * L * x - p);
    const auto r = catalyst::moreau_stationarity(*q, x, 1e-10);
    EXPECT_NEAR(r.value, 2 * L * (x - prox).norm(), 1e-9);
    EXPECT_LE(r.error_bound, 1e-10);
  }
}

TEST(Moreau, BoundedByGradientNorm) {
  const auto spec = testing::deterministic_spec(5);
  auto inst = instances::make_deterministic_instance(spec);
  testing::Rng rng(3);
  for (int k = 0; k < 5; ++k) {
    const Vec x = rng.vec(inst->dim_x(), spec.eta);
    const auto r = catalyst::moreau_stationarity(*inst, x, 1e-10);
    EXPECT_LE(r.value, inst->primal_gradient(x).norm() * (1 + 1e-8) + 1e-10);
  }
}

}  // namespace
}  // namespace ncsc
