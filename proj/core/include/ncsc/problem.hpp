#pragma once

#include <memory>

#include "ncsc/types.hpp"

namespace ncsc {

// Oracle-backed description of f(x, y). Implementations are immutable and safe
// for concurrent const use. Gradient out-parameters are resized as needed.
class SaddleProblem {
 public:
  virtual ~SaddleProblem() = default;

  virtual Index dim_x() const = 0;
  virtual Index dim_y() const = 0;
  virtual int n_components() const { return 1; }
  virtual Constants constants() const = 0;

  virtual double value(const Vec& x, const Vec& y) const = 0;
  virtual void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const = 0;
  // Gradient of component i in [0, n_components). Single-component problems
  // forward to gradient().
  virtual void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                                  Vec& gy) const;

  virtual bool has_primal() const { return false; }
  virtual double primal_value(const Vec& x) const;
  virtual void primal_gradient(const Vec& x, Vec& g) const;
  // y*(x) = argmax_y f(x, y), when available in closed form.
  virtual bool has_best_response() const { return false; }
  virtual void best_response(const Vec& x, Vec& y) const;

  Gradient gradient(const SaddlePoint& z) const;
  Gradient component_gradient(int i, const SaddlePoint& z) const;
  double value(const SaddlePoint& z) const { return value(z.x, z.y); }
  Vec primal_gradient(const Vec& x) const;
  Vec best_response(const Vec& x) const;
  SaddlePoint zero_point() const { return SaddlePoint::zeros(dim_x(), dim_y()); }

 protected:
  void check_dims(const Vec& x, const Vec& y) const;
};

using ProblemPtr = std::shared_ptr<const SaddleProblem>;

// Max over coordinates of |central difference - analytic| / (1 + |analytic|).
double finite_difference_check(const SaddleProblem& problem,
                               const SaddlePoint& point, double h);

}  // namespace ncsc
