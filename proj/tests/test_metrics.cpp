#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

namespace ncsc {
namespace {

using metrics::LbAlgorithm;

TEST(FitLinear, ExactLineAndResiduals) {
  const auto fit = metrics::fit_linear({0, 1, 2, 3}, {1, 3, 5, 7});
  EXPECT_DOUBLE_EQ(fit.slope, 2.0);
  EXPECT_DOUBLE_EQ(fit.intercept, 1.0);
  EXPECT_NEAR(fit.residual, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(fit.r2, 1.0);
  const auto noisy = metrics::fit_linear({0, 1, 2, 3}, {0, 1, 0, 1});
  EXPECT_NEAR(noisy.slope, 0.2, 1e-15);
  EXPECT_NEAR(noisy.r2, 0.2, 1e-15);
  EXPECT_THROW(metrics::fit_linear({1}, {1}), Error);
  EXPECT_THROW(metrics::fit_linear({1, 1}, {1, 2}), Error);
}

TEST(FitScaling, RecoversPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (double k : {4.0, 16.0, 64.0, 256.0}) pts.emplace_back(k, 7.0 * std::sqrt(k));
  const auto fit = metrics::fit_scaling(pts);
  EXPECT_NEAR(fit.slope, 0.5, 1e-9);
  EXPECT_NEAR(fit.intercept, std::log(7.0), 1e-9);
  for (auto& p : pts) p.second *= 1000;
  const auto scaled = metrics::fit_scaling(pts);
  EXPECT_NEAR(scaled.slope, fit.slope, 1e-12);
  EXPECT_NEAR(scaled.intercept, fit.intercept + std::log(1000.0), 1e-9);
}

TEST(FitScaling, NeedsFourPositivePoints) {
  EXPECT_THROW(metrics::fit_scaling({{1, 1}, {2, 2}, {3, 3}}), Error);
  EXPECT_THROW(metrics::fit_scaling({{1, 1}, {2, 2}, {3, 3}, {4, 0}}), Error);
}

TEST(PrimalGradNorm, ClosedFormAndAscentAgree) {
  auto q = testing::random_scsc(2, 3, 4);
  const Vec x = Vec::Ones(3);
  const auto exact = metrics::primal_grad_norm(*q, x, 1e-12);
  EXPECT_TRUE(exact.exact);
  EXPECT_EQ(exact.oracle_calls, 0u);
  const auto approx =
      metrics::primal_grad_norm(*q, x, 1e-12, metrics::PrimalMode::ascent);
  EXPECT_FALSE(approx.exact);
  EXPECT_GT(approx.oracle_calls, 0u);
  EXPECT_LE(std::abs(approx.value - exact.value), approx.slack + 1e-12);
}

TEST(LbAlgorithmNames, RoundTrip) {
  for (auto a : {LbAlgorithm::gda, LbAlgorithm::alt_gda, LbAlgorithm::eg, LbAlgorithm::ogda,
                 LbAlgorithm::catalyst_eg, LbAlgorithm::svrg, LbAlgorithm::catalyst_svrg,
                 LbAlgorithm::incremental})
    EXPECT_EQ(metrics::parse_lb_algorithm(metrics::to_string(a)), a);
  EXPECT_THROW(metrics::parse_lb_algorithm("newton"), Error);
  EXPECT_TRUE(metrics::is_stochastic(LbAlgorithm::svrg));
  EXPECT_FALSE(metrics::is_stochastic(LbAlgorithm::eg));
}

TEST(LowerBound, DeterministicFloorHolds) {
  const auto spec = testing::deterministic_spec(10);
  metrics::LowerBoundOptions options;
  options.budget = 20000;
  const auto report = metrics::verify_lower_bound(
      spec,
      {LbAlgorithm::gda, LbAlgorithm::alt_gda, LbAlgorithm::eg, LbAlgorithm::ogda,
       LbAlgorithm::catalyst_eg},
      spec.epsilon, options);
  EXPECT_TRUE(report.preconditions_hold);
  EXPECT_EQ(report.branch, "activation+epsilon");
  for (const auto& o : report.outcomes) {
    EXPECT_GE(o.min_calls_to_activation, 19) << metrics::to_string(o.algorithm);
    EXPECT_GE(o.min_calls_to_epsilon, 19) << metrics::to_string(o.algorithm);
    EXPECT_EQ(o.floor_violations, 0u) << metrics::to_string(o.algorithm);
    EXPECT_GT(o.queries_checked, 0u);
  }
  EXPECT_TRUE(report.passed());
  EXPECT_NE(report.to_text().find("PASS"), std::string::npos);
  const std::string csv = report.to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(LowerBound, FiniteSumFloorHolds) {
  const auto spec = testing::finite_sum_spec(4, 6, 1.0 / 16);
  metrics::LowerBoundOptions options;
  options.budget = 20000;
  options.seeds = {0, 1, 2, 3, 4};
  const auto report = metrics::verify_lower_bound(
      spec, {LbAlgorithm::svrg, LbAlgorithm::catalyst_svrg, LbAlgorithm::incremental},
      spec.epsilon, options);
  for (const auto& o : report.outcomes) {
    EXPECT_EQ(o.runs, 5);
    EXPECT_GE(o.calls_to_activation, 22.0) << metrics::to_string(o.algorithm);
  }
  EXPECT_TRUE(report.passed());
}

TEST(LowerBound, Case1Floor) {
  auto spec = instances::derive_spec(instances::Mode::case1, 1.0, 0.1, 1.0, 1.0, 4, 8);
  metrics::LowerBoundOptions options;
  options.budget = 5000;
  options.seeds = {0, 1, 2};
  const auto report =
      metrics::verify_lower_bound(spec, {LbAlgorithm::incremental}, spec.epsilon, options);
  EXPECT_GE(report.outcomes.front().calls_to_activation, 2.0);
  EXPECT_TRUE(report.passed());
}

TEST(LowerBound, RejectsEmptySeeds) {
  metrics::LowerBoundOptions options;
  options.seeds.clear();
  EXPECT_THROW(metrics::verify_lower_bound(testing::deterministic_spec(4),
                                           {LbAlgorithm::eg}, 0.1, options),
               Error);
}

}  // namespace
}  // namespace ncsc
