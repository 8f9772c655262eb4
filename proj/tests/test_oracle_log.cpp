#include <gtest/gtest.h>

#include "support.hpp"

namespace ncsc {
namespace {

TEST(OracleLog, CountsUnitsForFullAndComponentCalls) {
  const auto spec = testing::finite_sum_spec(4, 3);
  auto [logged, log] = wrap_with_logging(instances::make_instance(spec));
  const SaddlePoint z = logged->zero_point();
  logged->gradient(z);
  logged->component_gradient(2, z);
  logged->component_gradient(0, z);
  EXPECT_EQ(log->fo_calls, 1u);
  EXPECT_EQ(log->ifo_calls, 2u);
  EXPECT_EQ(log->units, 6u);
  EXPECT_EQ(log->calls(), 3u);
}

TEST(OracleLog, RecordsFirstActivationPerCoordinate) {
  auto [logged, log] = wrap_with_logging(
      instances::make_chain_instance(testing::chain_params(5)), {{4}, 1});
  Vec x = Vec::Zero(6), y = Vec::Zero(7);
  Vec gx, gy;
  logged->gradient(x, y, gx, gy);
  x[0] = gx[0];
  logged->gradient(x, y, gx, gy);
  logged->gradient(x, y, gx, gy);
  ASSERT_EQ(log->x_activation.size(), 1u);
  EXPECT_EQ(log->x_activation[0].coordinate, 0);
  EXPECT_EQ(log->x_activation[0].call, 2u);
  EXPECT_FALSE(log->first_call_with_xd_nonzero);
  EXPECT_FALSE(log->first_protocol_violation);
}

TEST(OracleLog, FlagsQueriesOutsideTheSpan) {
  auto [logged, log] =
      wrap_with_logging(instances::make_chain_instance(testing::chain_params(5)));
  Vec x = Vec::Zero(6), y = Vec::Zero(7);
  Vec gx, gy;
  logged->gradient(x, y, gx, gy);
  x[3] = 1.0;
  logged->gradient(x, y, gx, gy);
  ASSERT_TRUE(log->first_protocol_violation);
  EXPECT_EQ(*log->first_protocol_violation, 2u);
}

TEST(OracleLog, WatchRequiresMajorityOfBlocks) {
  const auto spec = testing::finite_sum_spec(4, 3);
  const Index bx = spec.d + 1;
  ActivationWatch watch;
  for (int i = 0; i < 4; ++i) watch.coordinates.push_back(i * bx + spec.d - 1);
  watch.required = 3;
  auto [logged, log] = wrap_with_logging(instances::make_instance(spec), watch);
  SaddlePoint z = logged->zero_point();
  for (int i = 0; i < 4; ++i) {
    z.x[i * bx + spec.d - 1] = 1.0;
    logged->gradient(z);
    if (i < 2) EXPECT_FALSE(log->first_call_with_xd_nonzero);
  }
  ASSERT_TRUE(log->first_call_with_xd_nonzero);
  EXPECT_EQ(*log->first_call_with_xd_nonzero, 3u);
  EXPECT_EQ(*log->first_unit_with_xd_nonzero, 12u);
}

TEST(OracleLog, ObserverSeesEveryQuery) {
  int seen = 0;
  auto [logged, log] = wrap_with_logging(
      instances::make_chain_instance(testing::chain_params(3)), {},
      [&](const Vec&, const Vec&, const OracleLog& l) { seen = static_cast<int>(l.calls()); });
  solvers::SolverConfig cfg;
  cfg.max_iters = 10;
  solvers::run(solvers::SolverKind::eg, *logged, cfg, logged->zero_point());
  EXPECT_EQ(seen, 20);
  EXPECT_FALSE(log->first_protocol_violation);
}

TEST(ZeroChain, SolversActivateOneCoordinatePerTwoCalls) {
  const auto spec = testing::deterministic_spec(8);
  for (auto kind : {solvers::SolverKind::gda, solvers::SolverKind::alt_gda,
                    solvers::SolverKind::eg, solvers::SolverKind::ogda}) {
    auto [logged, log] = wrap_with_logging(instances::make_instance(spec));
    solvers::SolverConfig cfg;
    cfg.max_iters = 100;
    solvers::run(kind, *logged, cfg, logged->zero_point());
    EXPECT_FALSE(log->first_protocol_violation) << solvers::to_string(kind);
    for (const auto& a : log->x_activation)
      EXPECT_GE(a.call, 2 * static_cast<std::uint64_t>(a.coordinate) + 2)
          << solvers::to_string(kind) << " coordinate " << a.coordinate;
  }
}

}  // namespace
}  // namespace ncsc
