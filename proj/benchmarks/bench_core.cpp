#include <benchmark/benchmark.h>

#include <random>

#include "ncsc/ncsc.hpp"

namespace {

using namespace ncsc;

Vec random_vec(Index n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(engine);
  return v;
}

instances::HardInstanceSpec spec_for(int d, double kappa) {
  const double eps = instances::epsilon_for_dimension(instances::Mode::deterministic,
                                                      1.0, 1.0 / kappa, 1.0, d);
  return instances::derive_spec(instances::Mode::deterministic, 1.0, 1.0 / kappa, 1.0,
                                eps);
}

void BM_ChainApply(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const instances::ChainMatrix B(d, 1e-3);
  const Vec x = random_vec(B.cols(), 1);
  Vec out(B.rows());
  for (auto _ : state) {
    B.apply(x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(d);
}
BENCHMARK(BM_ChainApply)->RangeMultiplier(8)->Range(8, 32768)->Complexity();

void BM_ChainApplyTranspose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const instances::ChainMatrix B(d, 1e-3);
  const Vec y = random_vec(B.rows(), 2);
  Vec out(B.cols());
  for (auto _ : state) {
    B.apply_t(y, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(d);
}
BENCHMARK(BM_ChainApplyTranspose)->RangeMultiplier(8)->Range(8, 32768)->Complexity();

void BM_DeterministicGradient(benchmark::State& state) {
  auto inst = instances::make_deterministic_instance(
      spec_for(static_cast<int>(state.range(0)), 16.0));
  const Vec x = random_vec(inst->dim_x(), 3), y = random_vec(inst->dim_y(), 4);
  Vec gx, gy;
  for (auto _ : state) {
    inst->gradient(x, y, gx, gy);
    benchmark::DoNotOptimize(gx.data());
    benchmark::DoNotOptimize(gy.data());
  }
}
BENCHMARK(BM_DeterministicGradient)->Arg(10)->Arg(100)->Arg(1000);

void BM_FiniteSumComponentGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double mu = 1.0 / (4.0 * n);
  const double eps = instances::epsilon_for_dimension(instances::Mode::finite_sum, 1.0,
                                                      mu, 1.0, 20, n);
  auto inst = instances::make_finite_sum_instance(
      instances::derive_spec(instances::Mode::finite_sum, 1.0, mu, 1.0, eps, n, 20));
  const Vec x = random_vec(inst->dim_x(), 5), y = random_vec(inst->dim_y(), 6);
  Vec gx, gy;
  int i = 0;
  for (auto _ : state) {
    inst->component_gradient(i, x, y, gx, gy);
    i = (i + 1) % n;
    benchmark::DoNotOptimize(gx.data());
  }
}
BENCHMARK(BM_FiniteSumComponentGradient)->Arg(4)->Arg(16);

void BM_PrimalGradient(benchmark::State& state) {
  auto inst = instances::make_deterministic_instance(
      spec_for(static_cast<int>(state.range(0)), 16.0));
  const Vec x = random_vec(inst->dim_x(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(inst->primal_gradient(x));
}
BENCHMARK(BM_PrimalGradient)->Arg(10)->Arg(100)->Arg(1000);

void BM_SolverStep(benchmark::State& state) {
  const auto kind = static_cast<solvers::SolverKind>(state.range(0));
  auto inst = instances::make_deterministic_instance(spec_for(100, 16.0));
  auto stepper = solvers::make_stepper(kind, *inst, {}, inst->zero_point());
  for (auto _ : state) stepper->step();
  state.SetLabel(solvers::to_string(kind));
}
BENCHMARK(BM_SolverStep)
    ->Arg(static_cast<int>(solvers::SolverKind::gda))
    ->Arg(static_cast<int>(solvers::SolverKind::eg))
    ->Arg(static_cast<int>(solvers::SolverKind::ogda));

void BM_CatalystRun(benchmark::State& state) {
  auto inst = instances::make_deterministic_instance(
      spec_for(4, static_cast<double>(state.range(0))));
  catalyst::CatalystConfig cfg;
  cfg.T_max = 10;
  cfg.record_inner = false;
  std::uint64_t calls = 0;
  for (auto _ : state) {
    const auto r = catalyst::catalyst_run(*inst, cfg, inst->zero_point());
    calls = r.oracle_calls;
    benchmark::DoNotOptimize(r.best_x.data());
  }
  state.counters["oracle_calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_CatalystRun)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
