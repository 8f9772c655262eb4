#include "ncsc/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace ncsc::solvers {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::gda: return "gda";
    case SolverKind::alt_gda: return "alt-gda";
    case SolverKind::eg: return "eg";
    case SolverKind::ogda: return "ogda";
    case SolverKind::svrg: return "svrg";
  }
  return "unknown";
}

SolverKind parse_solver(const std::string& text) {
  if (text == "gda") return SolverKind::gda;
  if (text == "alt-gda" || text == "alt_gda" || text == "altgda")
    return SolverKind::alt_gda;
  if (text == "eg" || text == "extragradient") return SolverKind::eg;
  if (text == "ogda") return SolverKind::ogda;
  if (text == "svrg") return SolverKind::svrg;
  throw Error("unknown solver '" + text + "'");
}

double RateModel::iterations_for(double ratio) const {
  if (ratio <= 1) return 0.0;
  return std::log(ratio) / -std::log1p(-1.0 / effective());
}

RateModel RateModel::extragradient(double L, double mu, double tau) {
  return {(L + std::max(2 * L, tau)) / (4 * std::min(L, mu + tau))};
}

RateModel RateModel::svrg(int n, double L, double mu, double tau) {
  const double r = (L + std::sqrt(2.0) * std::max(2 * L, tau)) /
                   std::min(L, mu + tau);
  return {n + r * r};
}

Stepper::Stepper(const SaddleProblem& problem, SaddlePoint start)
    : problem_(problem), z_(std::move(start)) {
  if (z_.x.size() != problem.dim_x() || z_.y.size() != problem.dim_y())
    throw DimensionError("start point does not match problem dimensions");
}

const Gradient& Stepper::gradient_at_point() {
  if (!g_valid_) {
    full_gradient(z_.x, z_.y, g_.x, g_.y);
    g_valid_ = true;
  }
  return g_;
}

void Stepper::full_gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) {
  problem_.gradient(x, y, gx, gy);
  calls_ += static_cast<std::uint64_t>(problem_.n_components());
}

void Stepper::component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                                 Vec& gy) {
  problem_.component_gradient(i, x, y, gx, gy);
  ++calls_;
}

void Stepper::move_to(SaddlePoint z) {
  z_ = std::move(z);
  g_valid_ = false;
}

namespace {

class GdaStepper final : public Stepper {
 public:
  GdaStepper(const SaddleProblem& p, SaddlePoint start, double sx, double sy)
      : Stepper(p, std::move(start)), sx_(sx), sy_(sy) {}

  void step() override {
    const Gradient& g = gradient_at_point();
    move_to({z_.x - sx_ * g.x, z_.y + sy_ * g.y});
  }

 private:
  double sx_, sy_;
};

class AltGdaStepper final : public Stepper {
 public:
  AltGdaStepper(const SaddleProblem& p, SaddlePoint start, double sx, double sy)
      : Stepper(p, std::move(start)), sx_(sx), sy_(sy) {}

  void step() override {
    const Gradient& g = gradient_at_point();
    Vec x = z_.x - sx_ * g.x;
    full_gradient(x, z_.y, gx_, gy_);
    Vec y = z_.y + sy_ * gy_;
    move_to({std::move(x), std::move(y)});
  }

 private:
  double sx_, sy_;
  Vec gx_, gy_;
};

class ExtragradientStepper final : public Stepper {
 public:
  ExtragradientStepper(const SaddleProblem& p, SaddlePoint start, double sx,
                       double sy)
      : Stepper(p, std::move(start)), sx_(sx), sy_(sy) {}

  void step() override {
    const Gradient& g = gradient_at_point();
    const Vec hx = z_.x - sx_ * g.x;
    const Vec hy = z_.y + sy_ * g.y;
    full_gradient(hx, hy, gx_, gy_);
    move_to({z_.x - sx_ * gx_, z_.y + sy_ * gy_});
  }

 private:
  double sx_, sy_;
  Vec gx_, gy_;
};

class OgdaStepper final : public Stepper {
 public:
  OgdaStepper(const SaddleProblem& p, SaddlePoint start, double sx, double sy)
      : Stepper(p, std::move(start)), sx_(sx), sy_(sy) {}

  void step() override {
    const Gradient g = gradient_at_point();
    if (!has_prev_) {
      prev_ = g;
      has_prev_ = true;
    }
    SaddlePoint next{z_.x - sx_ * (2 * g.x - prev_.x),
                     z_.y + sy_ * (2 * g.y - prev_.y)};
    prev_ = g;
    move_to(std::move(next));
  }

 private:
  double sx_, sy_;
  Gradient prev_;
  bool has_prev_ = false;
};

// One step() is a full epoch: snapshot gradient, then epoch_length
// variance-reduced component steps.
class SvrgStepper final : public Stepper {
 public:
  SvrgStepper(const SaddleProblem& p, SaddlePoint start, double sx, double sy,
              std::uint64_t epoch, std::uint64_t seed)
      : Stepper(p, std::move(start)),
        sx_(sx),
        sy_(sy),
        epoch_(epoch),
        rng_(seed),
        pick_(0, p.n_components() - 1) {}

  void step() override {
    const Gradient snapshot_grad = gradient_at_point();
    const SaddlePoint snapshot = z_;
    SaddlePoint z = z_;
    for (std::uint64_t k = 0; k < epoch_; ++k) {
      const int i = pick_(rng_);
      component_gradient(i, z.x, z.y, gx_, gy_);
      component_gradient(i, snapshot.x, snapshot.y, sx0_, sy0_);
      z.x -= sx_ * (gx_ - sx0_ + snapshot_grad.x);
      z.y += sy_ * (gy_ - sy0_ + snapshot_grad.y);
    }
    move_to(std::move(z));
  }

 private:
  double sx_, sy_;
  std::uint64_t epoch_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> pick_;
  Vec gx_, gy_, sx0_, sy0_;
};

}  // namespace

std::pair<double, double> default_steps(SolverKind kind,
                                        const SaddleProblem& problem) {
  const Constants c = problem.constants();
  switch (kind) {
    case SolverKind::gda:
    case SolverKind::alt_gda: {
      // Two-timescale choice for nonconvex-strongly-concave problems.
      const double kappa = c.L / c.mu;
      return {1.0 / (16 * (kappa + 1) * (kappa + 1) * c.L), 1.0 / c.L};
    }
    case SolverKind::eg:
    case SolverKind::ogda:
      return {1.0 / (4 * c.L), 1.0 / (4 * c.L)};
    case SolverKind::svrg:
      return {1.0 / (8 * c.L), 1.0 / (8 * c.L)};
  }
  return {0.0, 0.0};
}

std::unique_ptr<Stepper> make_stepper(SolverKind kind, const SaddleProblem& problem,
                                      const SolverConfig& config,
                                      SaddlePoint start) {
  auto [dx, dy] = default_steps(kind, problem);
  const double sx = config.step_x > 0 ? config.step_x : dx;
  const double sy = config.step_y > 0 ? config.step_y : dy;
  if (config.step_x < 0 || config.step_y < 0)
    throw Error("step sizes must be positive");
  switch (kind) {
    case SolverKind::gda:
      return std::make_unique<GdaStepper>(problem, std::move(start), sx, sy);
    case SolverKind::alt_gda:
      return std::make_unique<AltGdaStepper>(problem, std::move(start), sx, sy);
    case SolverKind::eg:
      return std::make_unique<ExtragradientStepper>(problem, std::move(start),
                                                    sx, sy);
    case SolverKind::ogda:
      return std::make_unique<OgdaStepper>(problem, std::move(start), sx, sy);
    case SolverKind::svrg: {
      const int n = problem.n_components();
      if (n == 1)
        throw Error("SVRG needs a finite-sum problem; use EG for n = 1");
      const std::uint64_t epoch =
          config.epoch_length > 0 ? config.epoch_length : 2ull * n;
      return std::make_unique<SvrgStepper>(problem, std::move(start), sx, sy,
                                           epoch, config.seed);
    }
  }
  throw Error("unknown solver");
}

SolverResult run(SolverKind kind, const SaddleProblem& problem,
                 const SolverConfig& config, SaddlePoint start) {
  if (config.max_iters < 1) throw Error("max_iters must be >= 1");
  auto stepper = make_stepper(kind, problem, config, std::move(start));
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  SolverResult result;
  std::uint64_t k = 0;
  for (;;) {
    if (config.stop_predicate && config.stop_predicate(stepper->point())) {
      result.stopped = true;
      break;
    }
    if (k >= config.max_iters) break;
    stepper->step();
    ++k;
    if (!stepper->point().all_finite())
      throw DivergenceError(
          to_string(kind) + " produced a non-finite iterate at iteration " +
              std::to_string(k),
          k);
    if (config.trace_stride > 0 && k % config.trace_stride == 0)
      result.trace.add({stepper->oracle_calls(), k,
                        std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN(), elapsed()});
  }
  result.point = stepper->point();
  result.iterations = k;
  result.oracle_calls = stepper->oracle_calls();
  result.trace.add({result.oracle_calls, k,
                    std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(), elapsed()});
  return result;
}

SolverResult gda(const SaddleProblem& problem, const SolverConfig& config,
                 SaddlePoint start) {
  return run(SolverKind::gda, problem, config, std::move(start));
}

SolverResult alt_gda(const SaddleProblem& problem, const SolverConfig& config,
                     SaddlePoint start) {
  return run(SolverKind::alt_gda, problem, config, std::move(start));
}

SolverResult extragradient(const SaddleProblem& problem,
                           const SolverConfig& config, SaddlePoint start) {
  return run(SolverKind::eg, problem, config, std::move(start));
}

SolverResult ogda(const SaddleProblem& problem, const SolverConfig& config,
                  SaddlePoint start) {
  return run(SolverKind::ogda, problem, config, std::move(start));
}

SolverResult svrg_saddle(const SaddleProblem& problem, const SolverConfig& config,
                         SaddlePoint start) {
  return run(SolverKind::svrg, problem, config, std::move(start));
}

SolveUntilResult solve_until(const SaddleProblem& problem, SolverKind kind,
                             const SolverConfig& config, SaddlePoint start,
                             double threshold) {
  if (!(threshold >= 0)) throw Error("threshold must be nonnegative");
  auto stepper = make_stepper(kind, problem, config, std::move(start));
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t k = 0;
  for (;;) {
    const Gradient& g = stepper->gradient_at_point();
    const double norm_sq = g.norm_sq();
    best = std::min(best, norm_sq);
    if (norm_sq <= threshold)
      return {stepper->point(), g, k, stepper->oracle_calls()};
    if (k >= config.max_iters)
      throw BudgetExceededError(
          to_string(kind) + " exceeded " + std::to_string(config.max_iters) +
              " iterations before reaching the gradient threshold",
          best);
    stepper->step();
    ++k;
    if (!stepper->point().all_finite())
      throw DivergenceError(
          to_string(kind) + " produced a non-finite iterate at iteration " +
              std::to_string(k),
          k);
  }
}

}  // namespace ncsc::solvers
