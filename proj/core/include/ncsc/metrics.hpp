#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncsc/instances.hpp"
#include "ncsc/problem.hpp"
#include "ncsc/trace.hpp"

namespace ncsc::metrics {

enum class PrimalMode { automatic, closed_form, ascent };

struct PrimalGradEstimate {
  double value = 0.0;
  double slack = 0.0;  // |value - ‖∇Φ(x)‖| <= slack
  bool exact = false;
  std::uint64_t oracle_calls = 0;
};

PrimalGradEstimate primal_grad_norm(const SaddleProblem& problem, const Vec& x,
                                    double inner_tolerance,
                                    PrimalMode mode = PrimalMode::automatic);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual
  double r2 = 0.0;
};

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

// Least-squares fit of log(calls) against log(kappa); needs >= 4 points.
LinearFit fit_scaling(const std::vector<std::pair<double, double>>& kappa_calls);

enum class LbAlgorithm {
  gda,
  alt_gda,
  eg,
  ogda,
  catalyst_eg,
  svrg,
  catalyst_svrg,
  incremental,
};

std::string to_string(LbAlgorithm a);
LbAlgorithm parse_lb_algorithm(const std::string& text);
// Algorithms whose every oracle call costs one component (or n for a full
// gradient) and that sample randomly.
bool is_stochastic(LbAlgorithm a);

struct LowerBoundOptions {
  std::uint64_t budget = 200000;  // oracle units per run
  std::vector<std::uint64_t> seeds = {0};
};

struct AlgorithmOutcome {
  LbAlgorithm algorithm = LbAlgorithm::gda;
  int runs = 0;
  // Means over runs; censored runs contribute the budget.
  double calls_to_activation = 0.0;
  double calls_to_epsilon = 0.0;
  double min_calls_to_activation = 0.0;
  double min_calls_to_epsilon = 0.0;
  int reached = 0;                   // runs that reached ‖∇Φ‖ <= ε
  std::uint64_t floor_violations = 0;  // span-restricted queries below ε
  std::uint64_t queries_checked = 0;
  double floor = 0.0;
  bool passed = false;
};

struct LowerBoundReport {
  instances::HardInstanceSpec spec;
  double epsilon = 0.0;
  double gradient_floor = 0.0;
  bool preconditions_hold = false;
  std::string preconditions_detail;
  // "activation+epsilon" when the ε floor branch ran, "activation" otherwise.
  std::string branch;
  std::vector<AlgorithmOutcome> outcomes;

  bool passed() const;
  std::string to_text() const;
  std::string to_csv() const;
};

LowerBoundReport verify_lower_bound(const instances::HardInstanceSpec& spec,
                                    const std::vector<LbAlgorithm>& algorithms,
                                    double epsilon,
                                    const LowerBoundOptions& options = {});

}  // namespace ncsc::metrics
