#include "ncsc/oracle_log.hpp"

namespace ncsc {

LoggedProblem::LoggedProblem(ProblemPtr inner, std::shared_ptr<OracleLog> log,
                             ActivationWatch watch, QueryObserver observer)
    : inner_(std::move(inner)),
      log_(std::move(log)),
      watch_(std::move(watch)),
      observer_(std::move(observer)),
      x_active_(inner_->dim_x(), 0),
      y_active_(inner_->dim_y(), 0),
      x_span_(inner_->dim_x(), 0),
      y_span_(inner_->dim_y(), 0) {}

double LoggedProblem::value(const Vec& x, const Vec& y) const {
  return inner_->value(x, y);
}

void LoggedProblem::gradient(const Vec& x, const Vec& y, Vec& gx,
                             Vec& gy) const {
  inner_->gradient(x, y, gx, gy);
  ++log_->fo_calls;
  record(x, y, gx, gy, static_cast<std::uint64_t>(inner_->n_components()));
}

void LoggedProblem::component_gradient(int i, const Vec& x, const Vec& y,
                                       Vec& gx, Vec& gy) const {
  inner_->component_gradient(i, x, y, gx, gy);
  ++log_->ifo_calls;
  record(x, y, gx, gy, 1);
}

void LoggedProblem::record(const Vec& x, const Vec& y, const Vec& gx,
                           const Vec& gy, std::uint64_t cost) const {
  OracleLog& log = *log_;
  log.units += cost;
  const std::uint64_t call = log.calls();

  bool outside_span = false;
  for (Index j = 0; j < x.size(); ++j)
    if (x[j] != 0.0 && !x_span_[j]) outside_span = true;
  for (Index j = 0; j < y.size(); ++j)
    if (y[j] != 0.0 && !y_span_[j]) outside_span = true;
  if (outside_span && !log.first_protocol_violation)
    log.first_protocol_violation = call;

  for (Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0 && !x_active_[j]) {
      x_active_[j] = 1;
      log.x_activation.push_back({j, call});
    }
    if (x[j] != 0.0 || gx[j] != 0.0) x_span_[j] = 1;
  }
  for (Index j = 0; j < y.size(); ++j) {
    if (y[j] != 0.0 && !y_active_[j]) {
      y_active_[j] = 1;
      log.y_activation.push_back({j, call});
    }
    if (y[j] != 0.0 || gy[j] != 0.0) y_span_[j] = 1;
  }

  if (!watch_.coordinates.empty() && !log.first_call_with_xd_nonzero) {
    std::size_t active = 0;
    for (Index c : watch_.coordinates) active += x_active_[c] ? 1 : 0;
    if (active >= watch_.required) {
      log.first_call_with_xd_nonzero = call;
      log.first_unit_with_xd_nonzero = log.units;
    }
  }

  if (observer_) observer_(x, y, log);
}

std::pair<std::shared_ptr<LoggedProblem>, std::shared_ptr<OracleLog>>
wrap_with_logging(ProblemPtr problem, ActivationWatch watch,
                  QueryObserver observer) {
  auto log = std::make_shared<OracleLog>();
  auto logged = std::make_shared<LoggedProblem>(std::move(problem), log,
                                                std::move(watch),
                                                std::move(observer));
  return {logged, log};
}

}  // namespace ncsc
