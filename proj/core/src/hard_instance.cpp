#include <algorithm>
#include <cmath>
#include <sstream>

#include "ncsc/instances.hpp"

namespace ncsc::instances {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::deterministic: return "deterministic";
    case Mode::finite_sum: return "finite_sum";
    case Mode::case1: return "case1";
  }
  return "unknown";
}

Mode parse_mode(const std::string& text) {
  if (text == "deterministic") return Mode::deterministic;
  if (text == "finite_sum" || text == "finite-sum") return Mode::finite_sum;
  if (text == "case1" || text == "case-1") return Mode::case1;
  throw InvalidSpecError("unknown instance mode '" + text + "'");
}

double HardInstanceSpec::gradient_floor() const {
  switch (mode) {
    case Mode::deterministic:
      return eta * lambda1 * lambda1 / (8 * lambda2) * std::pow(alpha, 0.75);
    case Mode::finite_sum:
      return eta * lambda1 * lambda1 * std::pow(alpha, 0.75) /
             (lambda2 * std::sqrt(128.0 * n));
    case Mode::case1:
      return std::sqrt(L * L * Delta / mu);
  }
  return 0.0;
}

double HardInstanceSpec::call_floor() const {
  switch (mode) {
    case Mode::deterministic: return 2.0 * d - 1;
    case Mode::finite_sum: return 0.5 * n * (2.0 * d - 1);
    case Mode::case1: return 0.5 * n;
  }
  return 0.0;
}

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v))
    throw InvalidSpecError(std::string(name) + " must be positive and finite");
}

}  // namespace

HardInstanceSpec derive_spec(Mode mode, double L, double mu, double Delta,
                             double epsilon, int n, std::optional<int> d_override) {
  require_positive(L, "L");
  require_positive(mu, "mu");
  require_positive(Delta, "Delta");
  require_positive(epsilon, "epsilon");
  if (n < 1) throw InvalidSpecError("n must be >= 1");
  if (L < mu) throw InvalidSpecError("L must be >= mu");
  if (d_override && *d_override < 1)
    throw InvalidSpecError("d override must be >= 1");

  HardInstanceSpec s;
  s.mode = mode;
  s.L = L;
  s.mu = mu;
  s.Delta = Delta;
  s.epsilon = epsilon;
  s.n = n;
  const double kappa = L / mu;
  switch (mode) {
    case Mode::deterministic:
      s.n = 1;
      s.lambda1 = L / 2;
      s.lambda2 = mu / 2;
      s.alpha = mu / (100 * L);
      s.eta = 16 * mu / (L * L) * std::pow(s.alpha, -0.75) * epsilon;
      s.d_formula = Delta * L * std::sqrt(kappa) / (12800 * epsilon * epsilon);
      break;
    case Mode::finite_sum:
      if (L < 2 * n * mu)
        throw InvalidSpecError("finite-sum instance requires L >= 2 n mu");
      s.lambda1 = std::sqrt(n / 40.0) * L;
      s.lambda2 = n * mu / 2;
      s.alpha = n * mu / (50 * L);
      s.eta = 160 * std::sqrt(2.0 * n) * mu / (L * L) *
              std::pow(s.alpha, -0.75) * epsilon;
      s.d_formula = std::sqrt(s.alpha) * L * L * Delta /
                    (25600 * n * mu * epsilon * epsilon);
      break;
    case Mode::case1:
      s.lambda1 = L;
      s.lambda2 = mu / 2;
      s.alpha = 1.0;
      s.eta = 1.0;
      s.d_formula = n;
      break;
  }
  const double floored = std::floor(std::min(s.d_formula, 1e9));
  s.d = static_cast<int>(std::max(1.0, floored));
  if (d_override) {
    s.d_overridden = *d_override != s.d;
    s.d = *d_override;
  }
  validate(s);
  return s;
}

double epsilon_for_dimension(Mode mode, double L, double mu, double Delta, int d,
                             int n) {
  if (d < 1) throw InvalidSpecError("d must be >= 1");
  const double target = d + 0.5;
  switch (mode) {
    case Mode::deterministic:
      return std::sqrt(Delta * L * std::sqrt(L / mu) / (12800 * target));
    case Mode::finite_sum: {
      const double alpha = n * mu / (50 * L);
      return std::sqrt(std::sqrt(alpha) * L * L * Delta /
                       (25600 * n * mu * target));
    }
    case Mode::case1:
      return std::sqrt(L * L * Delta / mu);
  }
  return 0.0;
}

PreconditionReport check_epsilon_preconditions(const HardInstanceSpec& s) {
  PreconditionReport r;
  const double e2 = s.epsilon * s.epsilon;
  std::ostringstream os;
  switch (s.mode) {
    case Mode::deterministic: {
      const double b1 = s.Delta * s.L / 64000;
      const double b2 = s.Delta * s.L * std::sqrt(s.kappa()) / 38400;
      r.holds = e2 <= std::min(b1, b2) && s.d >= 3;
      os << "eps^2=" << e2 << " bounds " << b1 << "," << b2 << " d=" << s.d;
      break;
    }
    case Mode::finite_sum: {
      const double b1 = std::sqrt(s.alpha) * s.L * s.L * s.Delta /
                        (76800 * s.n * s.mu);
      const double b2 = s.alpha * s.L * s.L * s.Delta / (1280 * s.n * s.mu);
      const double b3 = s.L * s.L * s.Delta / s.mu;
      r.holds = e2 <= std::min({b1, b2, b3}) && s.d >= 3;
      os << "eps^2=" << e2 << " bounds " << b1 << "," << b2 << "," << b3
         << " d=" << s.d;
      break;
    }
    case Mode::case1: {
      const double b = s.L * s.L * s.Delta / s.mu;
      r.holds = e2 <= b;
      os << "eps^2=" << e2 << " bound " << b;
      break;
    }
  }
  r.detail = os.str();
  return r;
}

void validate(const HardInstanceSpec& s) {
  require_positive(s.L, "L");
  require_positive(s.mu, "mu");
  require_positive(s.Delta, "Delta");
  require_positive(s.epsilon, "epsilon");
  if (s.d < 1) throw InvalidSpecError("d must be >= 1");
  if (s.n < 1) throw InvalidSpecError("n must be >= 1");
  if (s.mode == Mode::case1) {
    if (s.d % s.n != 0)
      throw InvalidSpecError("case-1 dimension must be a multiple of n");
    return;
  }
  require_positive(s.lambda1, "lambda1");
  require_positive(s.lambda2, "lambda2");
  require_positive(s.eta, "eta");
  if (!(s.alpha > 0) || s.alpha > 1)
    throw InvalidSpecError("alpha must lie in (0, 1]");
  if (s.mode == Mode::deterministic &&
      s.alpha > s.mu / (100 * s.L) * (1 + 1e-12))
    throw InvalidSpecError("alpha must not exceed mu / (100 L)");
  if (s.mode == Mode::finite_sum && s.L < 2 * s.n * s.mu)
    throw InvalidSpecError("finite-sum instance requires L >= 2 n mu");
}

ChainKernel::ChainKernel(const ChainParams& p)
    : p_(p), B_(p.d, p.alpha), sqrt_alpha_(std::sqrt(p.alpha)) {
  require_positive(p.lambda1, "lambda1");
  require_positive(p.lambda2, "lambda2");
  require_positive(p.eta, "eta");
}

double ChainKernel::gamma_coefficient() const {
  return p_.lambda1 * p_.lambda1 * p_.alpha / (2 * p_.lambda2);
}

double ChainKernel::h_value(const Eigen::Ref<const Vec>& u,
                            const Eigen::Ref<const Vec>& v) const {
  const double l1 = p_.lambda1, l2 = p_.lambda2, eta = p_.eta;
  const int d = p_.d;
  Vec Bu(d + 2);
  B_.apply(u, Bu);
  const double c = l1 * l1 / l2;
  return l1 * Bu.dot(v) - l2 * v.squaredNorm() -
         eta * c * sqrt_alpha_ / 2 * u[0] - c * p_.alpha / 4 * u[d] * u[d] +
         eta * eta * c * sqrt_alpha_ / 4;
}

void ChainKernel::h_gradient(const Eigen::Ref<const Vec>& u,
                             const Eigen::Ref<const Vec>& v, Eigen::Ref<Vec> gu,
                             Eigen::Ref<Vec> gv) const {
  const double l1 = p_.lambda1, l2 = p_.lambda2, eta = p_.eta;
  const int d = p_.d;
  const double c = l1 * l1 / l2;
  B_.apply_t(v, gu);
  gu *= l1;
  gu[0] -= eta * c * sqrt_alpha_ / 2;
  gu[d] -= c * p_.alpha / 2 * u[d];
  B_.apply(u, gv);
  gv = l1 * gv - 2 * l2 * v;
}

double ChainKernel::gamma_sum(const Eigen::Ref<const Vec>& u) const {
  const double eta = p_.eta;
  double s = 0.0;
  for (int j = 0; j < p_.d; ++j) s += gamma(u[j] / eta);
  return eta * eta * s;
}

void ChainKernel::add_gamma_gradient(const Eigen::Ref<const Vec>& u,
                                     double coeff, Eigen::Ref<Vec> gu) const {
  const double eta = p_.eta;
  for (int j = 0; j < p_.d; ++j) gu[j] += coeff * eta * gamma_prime(u[j] / eta);
}

double ChainKernel::phi_value(const Eigen::Ref<const Vec>& u) const {
  const double eta = p_.eta, a = p_.alpha;
  const int d = p_.d;
  double quad = sqrt_alpha_ * u[0] * u[0];
  for (int i = 0; i < d; ++i) quad += (u[i] - u[i + 1]) * (u[i] - u[i + 1]);
  const double scale = p_.lambda1 * p_.lambda1 / (2 * p_.lambda2);
  return scale * (0.5 * quad - eta * sqrt_alpha_ * u[0] +
                  eta * eta * sqrt_alpha_ / 2 + (1 - a) / 2 * u[d] * u[d]) +
         gamma_coefficient() * gamma_sum(u);
}

void ChainKernel::phi_gradient(const Eigen::Ref<const Vec>& u,
                               Eigen::Ref<Vec> g) const {
  const double eta = p_.eta, a = p_.alpha;
  const int d = p_.d;
  const double scale = p_.lambda1 * p_.lambda1 / (2 * p_.lambda2);
  g[0] = (1 + sqrt_alpha_) * u[0] - u[1] - eta * sqrt_alpha_;
  for (int i = 1; i < d; ++i) g[i] = -u[i - 1] + 2 * u[i] - u[i + 1];
  g[d] = u[d] - u[d - 1] + (1 - a) * u[d];
  g *= scale;
  add_gamma_gradient(u, gamma_coefficient(), g);
}

void ChainKernel::best_response(const Eigen::Ref<const Vec>& u,
                                Eigen::Ref<Vec> v) const {
  B_.apply(u, v);
  v *= p_.lambda1 / (2 * p_.lambda2);
}

Constants chain_constants(const ChainParams& p) {
  const double L = std::max({200 * p.lambda1 * p.lambda1 * p.alpha / p.lambda2,
                             2 * p.lambda1, 2 * p.lambda2});
  return {L, 2 * p.lambda2, 0.0};
}

ChainInstance::ChainInstance(const ChainParams& params, Constants constants)
    : kernel_(params), constants_(constants) {}

double ChainInstance::value(const Vec& x, const Vec& y) const {
  check_dims(x, y);
  return kernel_.h_value(x, y) + kernel_.gamma_coefficient() * kernel_.gamma_sum(x);
}

void ChainInstance::gradient(const Vec& x, const Vec& y, Vec& gx,
                             Vec& gy) const {
  check_dims(x, y);
  gx.resize(dim_x());
  gy.resize(dim_y());
  kernel_.h_gradient(x, y, gx, gy);
  kernel_.add_gamma_gradient(x, kernel_.gamma_coefficient(), gx);
}

double ChainInstance::primal_value(const Vec& x) const {
  return kernel_.phi_value(x);
}

void ChainInstance::primal_gradient(const Vec& x, Vec& g) const {
  g.resize(dim_x());
  kernel_.phi_gradient(x, g);
}

void ChainInstance::best_response(const Vec& x, Vec& y) const {
  y.resize(dim_y());
  kernel_.best_response(x, y);
}

FiniteSumInstance::FiniteSumInstance(int n, const ChainParams& params,
                                     Constants constants)
    : n_(n),
      kernel_(params),
      constants_(constants),
      bx_(params.d + 1),
      by_(params.d + 2) {
  if (n < 1) throw InvalidSpecError("n must be >= 1");
}

double FiniteSumInstance::gamma_all(const Vec& x) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += kernel_.gamma_sum(x.segment(i * bx_, bx_));
  return s;
}

double FiniteSumInstance::component_value(int i, const Vec& x,
                                          const Vec& y) const {
  check_dims(x, y);
  return kernel_.h_value(x.segment(i * bx_, bx_), y.segment(i * by_, by_)) +
         kernel_.gamma_coefficient() / n_ * gamma_all(x);
}

double FiniteSumInstance::value(const Vec& x, const Vec& y) const {
  check_dims(x, y);
  double h = 0.0;
  for (int i = 0; i < n_; ++i)
    h += kernel_.h_value(x.segment(i * bx_, bx_), y.segment(i * by_, by_));
  return h / n_ + kernel_.gamma_coefficient() / n_ * gamma_all(x);
}

void FiniteSumInstance::gradient(const Vec& x, const Vec& y, Vec& gx,
                                 Vec& gy) const {
  check_dims(x, y);
  gx.resize(dim_x());
  gy.resize(dim_y());
  const double cg = kernel_.gamma_coefficient() / n_;
  for (int i = 0; i < n_; ++i) {
    auto gu = gx.segment(i * bx_, bx_);
    auto gv = gy.segment(i * by_, by_);
    kernel_.h_gradient(x.segment(i * bx_, bx_), y.segment(i * by_, by_), gu, gv);
    gu /= n_;
    gv /= n_;
    kernel_.add_gamma_gradient(x.segment(i * bx_, bx_), cg, gu);
  }
}

void FiniteSumInstance::component_gradient(int i, const Vec& x, const Vec& y,
                                           Vec& gx, Vec& gy) const {
  check_dims(x, y);
  if (i < 0 || i >= n_) throw Error("component index out of range");
  gx.setZero(dim_x());
  gy.setZero(dim_y());
  kernel_.h_gradient(x.segment(i * bx_, bx_), y.segment(i * by_, by_),
                     gx.segment(i * bx_, bx_), gy.segment(i * by_, by_));
  const double cg = kernel_.gamma_coefficient() / n_;
  for (int j = 0; j < n_; ++j)
    kernel_.add_gamma_gradient(x.segment(j * bx_, bx_), cg,
                               gx.segment(j * bx_, bx_));
}

double FiniteSumInstance::primal_value(const Vec& x) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += kernel_.phi_value(x.segment(i * bx_, bx_));
  return s / n_;
}

void FiniteSumInstance::primal_gradient(const Vec& x, Vec& g) const {
  g.resize(dim_x());
  for (int i = 0; i < n_; ++i) {
    auto gi = g.segment(i * bx_, bx_);
    kernel_.phi_gradient(x.segment(i * bx_, bx_), gi);
    gi /= n_;
  }
}

void FiniteSumInstance::best_response(const Vec& x, Vec& y) const {
  y.resize(dim_y());
  for (int i = 0; i < n_; ++i)
    kernel_.best_response(x.segment(i * bx_, bx_), y.segment(i * by_, by_));
}

Case1Instance::Case1Instance(int n, double L, double mu, double Delta,
                             int d_total)
    : n_(n), L_(L), mu_(mu), d_total_(d_total) {
  require_positive(L, "L");
  require_positive(mu, "mu");
  require_positive(Delta, "Delta");
  if (n < 1 || d_total < 1 || d_total % n != 0)
    throw InvalidSpecError("case-1 dimension must be a positive multiple of n");
  theta_ = std::sqrt(2 * L * L * n * double(n) * Delta / (mu * d_total));
}

double Case1Instance::value(const Vec& x, const Vec& y) const {
  check_dims(x, y);
  return theta_ / n_ * x.sum() + L_ * x.dot(y) - mu_ / 2 * y.squaredNorm();
}

void Case1Instance::gradient(const Vec& x, const Vec& y, Vec& gx,
                             Vec& gy) const {
  check_dims(x, y);
  gx = L_ * y;
  gx.array() += theta_ / n_;
  gy = L_ * x - mu_ * y;
}

void Case1Instance::component_gradient(int i, const Vec& x, const Vec& y,
                                       Vec& gx, Vec& gy) const {
  check_dims(x, y);
  if (i < 0 || i >= n_) throw Error("component index out of range");
  gx = L_ * y;
  gx.segment(i * block_size(), block_size()).array() += theta_;
  gy = L_ * x - mu_ * y;
}

double Case1Instance::primal_value(const Vec& x) const {
  return L_ * L_ / (2 * mu_) * x.squaredNorm() + theta_ / n_ * x.sum();
}

void Case1Instance::primal_gradient(const Vec& x, Vec& g) const {
  g = L_ * L_ / mu_ * x;
  g.array() += theta_ / n_;
}

void Case1Instance::best_response(const Vec& x, Vec& y) const {
  y = L_ / mu_ * x;
}

Vec Case1Instance::minimizer() const {
  return Vec::Constant(d_total_, -mu_ * theta_ / (L_ * L_ * n_));
}

double Case1Instance::gradient_floor() const {
  return theta_ / n_ * std::sqrt(d_total_ / 2.0);
}

std::shared_ptr<ChainInstance> make_chain_instance(const ChainParams& params) {
  return std::make_shared<ChainInstance>(params, chain_constants(params));
}

std::shared_ptr<ChainInstance> make_deterministic_instance(
    const HardInstanceSpec& spec) {
  if (spec.mode != Mode::deterministic)
    throw InvalidSpecError("spec mode is not deterministic");
  validate(spec);
  ChainParams p{spec.d, spec.lambda1, spec.lambda2, spec.alpha, spec.eta};
  return std::make_shared<ChainInstance>(p, Constants{spec.L, spec.mu, 0.0});
}

std::shared_ptr<FiniteSumInstance> make_finite_sum_instance(
    const HardInstanceSpec& spec) {
  if (spec.mode != Mode::finite_sum)
    throw InvalidSpecError("spec mode is not finite_sum");
  validate(spec);
  ChainParams p{spec.d, spec.lambda1, spec.lambda2, spec.alpha, spec.eta};
  return std::make_shared<FiniteSumInstance>(spec.n, p,
                                             Constants{spec.L, spec.mu, 0.0});
}

std::shared_ptr<Case1Instance> make_case1_instance(int n, double L, double mu,
                                                   double Delta, int d_total) {
  return std::make_shared<Case1Instance>(n, L, mu, Delta, d_total);
}

ProblemPtr make_instance(const HardInstanceSpec& spec) {
  switch (spec.mode) {
    case Mode::deterministic: return make_deterministic_instance(spec);
    case Mode::finite_sum: return make_finite_sum_instance(spec);
    case Mode::case1:
      validate(spec);
      return make_case1_instance(spec.n, spec.L, spec.mu, spec.Delta, spec.d);
  }
  throw InvalidSpecError("unknown mode");
}

}  // namespace ncsc::instances
