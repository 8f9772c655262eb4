#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ncsc/problem.hpp"

namespace ncsc {

struct Activation {
  Index coordinate;    // 0-based
  std::uint64_t call;  // 1-based call index of the first query with a nonzero entry
};

// "x_d activated" is reported once at least `required` of the watched x
// coordinates have been activated. Deterministic chains watch the single
// coordinate x_d; the finite-sum instance watches x_d of every block and
// requires a strict majority.
struct ActivationWatch {
  std::vector<Index> coordinates;
  std::size_t required = 1;
};

struct OracleLog {
  std::uint64_t fo_calls = 0;
  std::uint64_t ifo_calls = 0;
  // Oracle cost in incremental units: a full gradient of an n-component
  // problem costs n, a component gradient costs 1.
  std::uint64_t units = 0;
  std::vector<Activation> x_activation;
  std::vector<Activation> y_activation;
  std::optional<std::uint64_t> first_call_with_xd_nonzero;
  std::optional<std::uint64_t> first_unit_with_xd_nonzero;
  // First call whose query left the span of earlier queries and gradients.
  std::optional<std::uint64_t> first_protocol_violation;

  std::uint64_t calls() const { return fo_calls + ifo_calls; }
};

// Invoked after every gradient call with the query point and the updated log.
using QueryObserver =
    std::function<void(const Vec& x, const Vec& y, const OracleLog& log)>;

class LoggedProblem final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  LoggedProblem(ProblemPtr inner, std::shared_ptr<OracleLog> log,
                ActivationWatch watch = {}, QueryObserver observer = {});

  Index dim_x() const override { return inner_->dim_x(); }
  Index dim_y() const override { return inner_->dim_y(); }
  int n_components() const override { return inner_->n_components(); }
  Constants constants() const override { return inner_->constants(); }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                          Vec& gy) const override;

  bool has_primal() const override { return inner_->has_primal(); }
  double primal_value(const Vec& x) const override {
    return inner_->primal_value(x);
  }
  void primal_gradient(const Vec& x, Vec& g) const override {
    inner_->primal_gradient(x, g);
  }
  bool has_best_response() const override { return inner_->has_best_response(); }
  void best_response(const Vec& x, Vec& y) const override {
    inner_->best_response(x, y);
  }

  const OracleLog& log() const { return *log_; }
  const SaddleProblem& inner() const { return *inner_; }

 private:
  void record(const Vec& x, const Vec& y, const Vec& gx, const Vec& gy,
              std::uint64_t cost) const;

  ProblemPtr inner_;
  std::shared_ptr<OracleLog> log_;
  ActivationWatch watch_;
  QueryObserver observer_;
  // Mutable run state; a LoggedProblem belongs to one run.
  mutable std::vector<char> x_active_;
  mutable std::vector<char> y_active_;
  mutable std::vector<char> x_span_;
  mutable std::vector<char> y_span_;
};

std::pair<std::shared_ptr<LoggedProblem>, std::shared_ptr<OracleLog>>
wrap_with_logging(ProblemPtr problem, ActivationWatch watch = {},
                  QueryObserver observer = {});

}  // namespace ncsc
