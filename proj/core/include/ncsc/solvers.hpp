#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>

#include "ncsc/problem.hpp"
#include "ncsc/trace.hpp"

namespace ncsc::solvers {

enum class SolverKind { gda, alt_gda, eg, ogda, svrg };

std::string to_string(SolverKind kind);
SolverKind parse_solver(const std::string& text);

struct SolverConfig {
  // Zero selects the solver default derived from the problem constants.
  double step_x = 0.0;
  double step_y = 0.0;
  std::uint64_t max_iters = 1000;
  std::uint64_t seed = 0;
  std::uint64_t epoch_length = 0;  // SVRG; zero selects 2n
  std::function<bool(const SaddlePoint&)> stop_predicate;
  // Record a trace row every `trace_stride` iterations; zero records only the
  // final row.
  std::uint64_t trace_stride = 0;
};

struct RateModel {
  double lambda_M = 2.0;

  double effective() const { return std::max(lambda_M, 2.0); }
  // N with (1 - 1/Λ)^N <= 1/ratio.
  double iterations_for(double ratio) const;

  static RateModel extragradient(double L, double mu, double tau);
  static RateModel svrg(int n, double L, double mu, double tau);
};

struct SolverResult {
  SaddlePoint point;
  metrics::RunTrace trace;
  std::uint64_t iterations = 0;
  std::uint64_t oracle_calls = 0;  // incremental-oracle units
  bool stopped = false;            // stop predicate fired
};

// One solver run as a sequence of iterations over a single problem. The
// gradient at the current point is cached so that criterion checks reuse the
// evaluation the next iteration needs anyway.
class Stepper {
 public:
  Stepper(const SaddleProblem& problem, SaddlePoint start);
  virtual ~Stepper() = default;

  virtual void step() = 0;
  const SaddlePoint& point() const { return z_; }
  const Gradient& gradient_at_point();
  std::uint64_t oracle_calls() const { return calls_; }

 protected:
  void full_gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy);
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx, Vec& gy);
  void move_to(SaddlePoint z);

  const SaddleProblem& problem_;
  SaddlePoint z_;
  Gradient g_;
  bool g_valid_ = false;
  std::uint64_t calls_ = 0;
};

std::unique_ptr<Stepper> make_stepper(SolverKind kind, const SaddleProblem& problem,
                                      const SolverConfig& config,
                                      SaddlePoint start);

// Default step sizes for a solver on a problem (x step, y step).
std::pair<double, double> default_steps(SolverKind kind, const SaddleProblem& problem);

SolverResult run(SolverKind kind, const SaddleProblem& problem,
                 const SolverConfig& config, SaddlePoint start);

SolverResult gda(const SaddleProblem& problem, const SolverConfig& config,
                 SaddlePoint start);
SolverResult alt_gda(const SaddleProblem& problem, const SolverConfig& config,
                     SaddlePoint start);
SolverResult extragradient(const SaddleProblem& problem, const SolverConfig& config,
                           SaddlePoint start);
SolverResult ogda(const SaddleProblem& problem, const SolverConfig& config,
                  SaddlePoint start);
SolverResult svrg_saddle(const SaddleProblem& problem, const SolverConfig& config,
                         SaddlePoint start);

struct SolveUntilResult {
  SaddlePoint point;
  Gradient gradient;  // gradient at `point`
  std::uint64_t iterations = 0;
  std::uint64_t oracle_calls = 0;
};

// Iterates until ‖∇f‖² <= threshold, checking after every iteration (every
// epoch for SVRG). config.max_iters bounds the iterations.
SolveUntilResult solve_until(const SaddleProblem& problem, SolverKind kind,
                             const SolverConfig& config, SaddlePoint start,
                             double threshold);

}  // namespace ncsc::solvers
