#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncsc/problem.hpp"
#include "ncsc/solvers.hpp"

namespace ncsc::catalyst {

// f̂(x, y) = f(x, y) + L‖x - center‖². The base problem must outlive this
// object.
class AuxProblem final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  AuxProblem(const SaddleProblem& base, Vec center);

  Index dim_x() const override { return base_.dim_x(); }
  Index dim_y() const override { return base_.dim_y(); }
  int n_components() const override { return base_.n_components(); }
  // SC-SC with strong convexity L and concavity μ; smoothness 3L.
  Constants constants() const override;

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                          Vec& gy) const override;

  bool has_primal() const override { return base_.has_primal(); }
  double primal_value(const Vec& x) const override;
  void primal_gradient(const Vec& x, Vec& g) const override;
  bool has_best_response() const override { return base_.has_best_response(); }
  void best_response(const Vec& x, Vec& y) const override {
    base_.best_response(x, y);
  }

  const SaddleProblem& base() const { return base_; }
  const Vec& center() const { return center_; }
  double base_L() const { return L_; }

 private:
  const SaddleProblem& base_;
  Vec center_;
  double L_;
};

// f̃(x, y) = f̂(x, y) - (τ/2)‖y - z‖². The aux problem must outlive this object.
class SubProblem final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  SubProblem(const AuxProblem& aux, double tau, Vec z_center);

  Index dim_x() const override { return aux_.dim_x(); }
  Index dim_y() const override { return aux_.dim_y(); }
  int n_components() const override { return aux_.n_components(); }
  // Strong convexity L, concavity μ + τ, smoothness L + max(2L, τ) (scaled by
  // √2 for averaged smoothness of finite sums).
  Constants constants() const override;

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                          Vec& gy) const override;

  double tau() const { return tau_; }
  const Vec& z_center() const { return z_; }

 private:
  const AuxProblem& aux_;
  double tau_;
  Vec z_;
};

std::unique_ptr<AuxProblem> build_aux_problem(const SaddleProblem& problem,
                                              Vec center_x);
std::unique_ptr<SubProblem> build_subproblem(const AuxProblem& aux, double tau,
                                             Vec z_center);

// Schedule constants, kept as data so they can be ablated.
struct ScheduleConstants {
  double alpha_t_denominator = 504.0;
  double alpha_0_denominator = 576.0;
  double rho_fraction = 0.9;
  double outer_delta = 268.0 / 5;
  double outer_dy = 28.0 / 5;
  double moreau_delta = 87.0 / 5;
  double moreau_dy = 7.0 / 5;
};

struct CatalystConfig {
  std::optional<double> tau;      // default: L - μ (EG/OGDA), max(L/√n - μ, 0) (SVRG)
  std::optional<double> rho;      // default: 0.9√q
  std::optional<double> alpha_0;  // default: μ⁵/(576 max(1, L⁷))
  std::optional<double> alpha_t;  // default: μ⁵/(504 L⁵)
  ScheduleConstants schedule;
  solvers::SolverKind subsolver = solvers::SolverKind::eg;
  // Step-size overrides and seed for the subsolver; max_iters is ignored in
  // favour of N_max.
  solvers::SolverConfig subsolver_config;
  int T_max = 100;
  int K_max = 10000;
  std::uint64_t N_max = 1000000;
  std::uint64_t seed = 0;
  // Accelerated ascent on f(x₀, ·) until ‖∇ᵧf‖ <= tolerance before the first
  // round. Disabled when unset.
  std::optional<double> y_warmup_tolerance;
  // Stop once the measured ‖∇Φ(x₀ᵗ)‖ <= target_epsilon.
  std::optional<double> target_epsilon;
  // ‖∇Φ‖ estimator used when the problem has no closed-form primal.
  std::function<double(const Vec&)> measure;
  // Checked after every outer round; true ends the run.
  std::function<bool()> should_stop;
  bool record_inner = true;
};

struct ResolvedParameters {
  double tau = 0.0;
  double q = 1.0;
  double rho = 0.9;
  double momentum = 0.0;  // (√q - q)/(√q + q)
  double alpha_0 = 0.0;
  double alpha_t = 0.0;
};

ResolvedParameters resolve(const CatalystConfig& config,
                           const SaddleProblem& problem);

struct InnerRound {
  int k = 0;
  double epsilon_k = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  SaddlePoint start;
  SaddlePoint exit;
  double aux_grad_sq = 0.0;  // ‖∇f̂(exit)‖²
};

struct InnerResult {
  SaddlePoint point;
  int K = 0;
  double entry_grad_sq = 0.0;
  double exit_grad_sq = 0.0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t subsolver_iterations = 0;
  std::vector<InnerRound> rounds;
};

// Inner accelerated proximal-point loop on y for one outer round. The
// uncomputable gap in the accuracy schedule is replaced by the certified
// bound (1/2μ)‖∇f̂(x₀, y₀)‖², giving ε_k = (√2/4)(1-ρ)^k ‖∇f̂(x₀, y₀)‖².
InnerResult inner_loop(const AuxProblem& aux, const SaddlePoint& start,
                       const CatalystConfig& config,
                       const ResolvedParameters& params, double alpha,
                       std::uint64_t seed);

struct OuterRound {
  int t = 0;
  std::uint64_t calls = 0;  // cumulative oracle units at round end
  int K = 0;
  double alpha = 0.0;
  double entry_grad_sq = 0.0;
  double exit_grad_sq = 0.0;
  double grad_phi_norm = 0.0;  // at x₀ᵗ⁺¹; NaN when unmeasured
  std::uint64_t subsolver_iterations = 0;
  Vec x;  // x₀ᵗ⁺¹
  Vec y;  // y₀ᵗ⁺¹
  std::vector<InnerRound> inner;
};

struct CatalystTrace {
  ResolvedParameters params;
  std::string gap_rule = "gradient-norm surrogate (1/2mu)|grad f_hat|^2";
  std::uint64_t warmup_calls = 0;
  SaddlePoint start;  // after warm start
  double initial_grad_phi_norm = 0.0;
  std::vector<OuterRound> rounds;
  int sampled_index = -1;  // 1-based index into x₀¹..x₀ᵀ
  int best_index = -1;
};

struct CatalystResult {
  Vec sampled_x;
  Vec best_x;
  CatalystTrace trace;
  bool reached_target = false;
  std::uint64_t oracle_calls = 0;
};

CatalystResult catalyst_run(const SaddleProblem& problem,
                            const CatalystConfig& config, SaddlePoint start);

struct MoreauResult {
  double value = 0.0;
  double error_bound = 0.0;
  Vec prox;
};

// 2L‖x - prox_{Φ/2L}(x)‖ with the returned value within `accuracy` of the
// exact one.
MoreauResult moreau_stationarity(const SaddleProblem& problem, const Vec& x,
                                 double accuracy);

// Nesterov ascent on the μ-strongly concave f(x, ·) from y0 until
// ‖∇ᵧf(x, y)‖ <= tolerance.
struct AscentResult {
  Vec y;
  double grad_norm = 0.0;
  std::uint64_t oracle_calls = 0;
};
AscentResult accelerated_ascent(const SaddleProblem& problem, const Vec& x,
                                Vec y0, double tolerance,
                                std::uint64_t max_iters = 1000000);

}  // namespace ncsc::catalyst
