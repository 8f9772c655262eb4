#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncsc {

using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

struct SaddlePoint {
  Vec x;
  Vec y;

  SaddlePoint() = default;
  SaddlePoint(Vec x_, Vec y_) : x(std::move(x_)), y(std::move(y_)) {}
  static SaddlePoint zeros(Index dx, Index dy) {
    return {Vec::Zero(dx), Vec::Zero(dy)};
  }
  bool all_finite() const { return x.allFinite() && y.allFinite(); }
};

struct Gradient {
  Vec x;
  Vec y;

  double norm_sq() const { return x.squaredNorm() + y.squaredNorm(); }
  double norm() const { return std::sqrt(norm_sq()); }
};

// Problem constants. L is the smoothness constant (averaged smoothness when the
// problem has several components), mu the strong concavity in y. mu_x is the
// strong convexity in x, zero when x-side is nonconvex or merely convex.
struct Constants {
  double L = 1.0;
  double mu = 1.0;
  double mu_x = 0.0;

  double kappa() const { return L / mu; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::uint64_t iteration)
      : Error(what), iteration_(iteration) {}
  std::uint64_t iteration() const { return iteration_; }

 private:
  std::uint64_t iteration_;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, double best)
      : Error(what), best_(best) {}
  double best() const { return best_; }

 private:
  double best_;
};

class ProtocolViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncsc
