#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncsc/problem.hpp"

namespace ncsc::instances {

// Γ(x) = 120 ∫_1^x t²(t-1)/(1+t²) dt, evaluated in closed form.
double gamma(double x);
double gamma_prime(double x);

// Implicit (d+2)x(d+1) chain matrix. Row 0 reads x_{d+1}, rows 1..d are the
// differences x_{d+1-r} - x_{d+2-r}, and the last row is α^{1/4} x_1.
class ChainMatrix {
 public:
  ChainMatrix(int d, double alpha);

  int d() const { return d_; }
  double alpha() const { return alpha_; }
  double alpha_quarter() const { return alpha_quarter_; }
  Index rows() const { return d_ + 2; }
  Index cols() const { return d_ + 1; }

  void apply(const Eigen::Ref<const Vec>& x, Eigen::Ref<Vec> out) const;
  void apply_t(const Eigen::Ref<const Vec>& y, Eigen::Ref<Vec> out) const;
  Vec apply(const Vec& x) const;
  Vec apply_t(const Vec& y) const;
  Eigen::MatrixXd dense() const;

 private:
  int d_;
  double alpha_;
  double alpha_quarter_;
};

// Tridiagonal A_d = B_dᵀB_d - e_{d+1}e_{d+1}ᵀ.
Eigen::MatrixXd chain_quadratic(int d, double alpha);

enum class Mode { deterministic, finite_sum, case1 };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct HardInstanceSpec {
  Mode mode = Mode::deterministic;
  double L = 1.0;
  double mu = 1.0;
  double Delta = 1.0;
  double epsilon = 1.0;
  int n = 1;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double alpha = 0.0;
  double eta = 1.0;
  int d = 1;
  // d before clamping / override, as given by the floor formula.
  double d_formula = 0.0;
  bool d_overridden = false;

  double kappa() const { return L / mu; }
  // Guaranteed lower bound on ‖∇Φ‖ while x_d stays inactive.
  double gradient_floor() const;
  // Lower bound on the number of oracle calls (FO or IFO units).
  double call_floor() const;
};

// Derives λ*, α, η, d from (L, μ, Δ, ε). Case-1 uses d_override as the total
// dimension (default n).
HardInstanceSpec derive_spec(Mode mode, double L, double mu, double Delta,
                             double epsilon, int n = 1,
                             std::optional<int> d_override = std::nullopt);

// ε such that the floor formula for d returns exactly `d`.
double epsilon_for_dimension(Mode mode, double L, double mu, double Delta, int d,
                             int n = 1);

// Precondition checks on ε² from the restated theorems.
struct PreconditionReport {
  bool holds = false;
  std::string detail;
};
PreconditionReport check_epsilon_preconditions(const HardInstanceSpec& spec);

void validate(const HardInstanceSpec& spec);

struct ChainParams {
  int d = 1;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double alpha = 0.01;
  double eta = 1.0;
};

// Shared single-block arithmetic for the scaled chain function
// η²F_d(u/η, v/η) split into its bilinear part H and the Γ sum.
class ChainKernel {
 public:
  explicit ChainKernel(const ChainParams& p);

  const ChainParams& params() const { return p_; }
  const ChainMatrix& matrix() const { return B_; }
  int d() const { return p_.d; }

  double h_value(const Eigen::Ref<const Vec>& u,
                 const Eigen::Ref<const Vec>& v) const;
  void h_gradient(const Eigen::Ref<const Vec>& u, const Eigen::Ref<const Vec>& v,
                  Eigen::Ref<Vec> gu, Eigen::Ref<Vec> gv) const;
  // Σ_{j<d} η²Γ(u_j/η), coefficient not included.
  double gamma_sum(const Eigen::Ref<const Vec>& u) const;
  // gu_j += coeff · ηΓ'(u_j/η) for j < d.
  void add_gamma_gradient(const Eigen::Ref<const Vec>& u, double coeff,
                          Eigen::Ref<Vec> gu) const;
  double gamma_coefficient() const;  // λ₁²α/(2λ₂)

  double phi_value(const Eigen::Ref<const Vec>& u) const;
  void phi_gradient(const Eigen::Ref<const Vec>& u, Eigen::Ref<Vec> g) const;
  void best_response(const Eigen::Ref<const Vec>& u, Eigen::Ref<Vec> v) const;

 private:
  ChainParams p_;
  ChainMatrix B_;
  double sqrt_alpha_;
};

// Scaled deterministic instance f(x,y) = η²F_d(x/η, y/η; λ, α).
class ChainInstance final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  ChainInstance(const ChainParams& params, Constants constants);

  Index dim_x() const override { return kernel_.d() + 1; }
  Index dim_y() const override { return kernel_.d() + 2; }
  Constants constants() const override { return constants_; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;

  bool has_primal() const override { return true; }
  double primal_value(const Vec& x) const override;
  void primal_gradient(const Vec& x, Vec& g) const override;
  bool has_best_response() const override { return true; }
  void best_response(const Vec& x, Vec& y) const override;

  const ChainKernel& kernel() const { return kernel_; }

 private:
  ChainKernel kernel_;
  Constants constants_;
};

// Finite-sum instance: n components over block-embedded copies of the chain.
class FiniteSumInstance final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  FiniteSumInstance(int n, const ChainParams& params, Constants constants);

  Index dim_x() const override { return static_cast<Index>(n_) * bx_; }
  Index dim_y() const override { return static_cast<Index>(n_) * by_; }
  int n_components() const override { return n_; }
  Constants constants() const override { return constants_; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                          Vec& gy) const override;
  double component_value(int i, const Vec& x, const Vec& y) const;

  bool has_primal() const override { return true; }
  double primal_value(const Vec& x) const override;
  void primal_gradient(const Vec& x, Vec& g) const override;
  bool has_best_response() const override { return true; }
  void best_response(const Vec& x, Vec& y) const override;

  const ChainKernel& kernel() const { return kernel_; }
  Index block_x() const { return bx_; }
  Index block_y() const { return by_; }

 private:
  double gamma_all(const Vec& x) const;

  int n_;
  ChainKernel kernel_;
  Constants constants_;
  Index bx_;
  Index by_;
};

// Case-1 instance h_i(x,y) = θ⟨v_i,x⟩ + L⟨x,y⟩ - (μ/2)‖y‖² with v_i the
// indicator of block i.
class Case1Instance final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  Case1Instance(int n, double L, double mu, double Delta, int d_total);

  Index dim_x() const override { return d_total_; }
  Index dim_y() const override { return d_total_; }
  int n_components() const override { return n_; }
  Constants constants() const override { return {L_, mu_, 0.0}; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                          Vec& gy) const override;

  bool has_primal() const override { return true; }
  double primal_value(const Vec& x) const override;
  void primal_gradient(const Vec& x, Vec& g) const override;
  bool has_best_response() const override { return true; }
  void best_response(const Vec& x, Vec& y) const override;

  double theta() const { return theta_; }
  Index block_size() const { return d_total_ / n_; }
  Vec minimizer() const;
  // (θ/n)·√(d_total/2): floor on ‖∇φ‖ while at most n/2 components were queried.
  double gradient_floor() const;

 private:
  int n_;
  double L_;
  double mu_;
  Index d_total_;
  double theta_;
};

// Constants of the unscaled chain:
// L = max(200λ₁²α/λ₂, 2λ₁, 2λ₂), μ = 2λ₂.
Constants chain_constants(const ChainParams& p);

std::shared_ptr<ChainInstance> make_chain_instance(const ChainParams& params);
std::shared_ptr<ChainInstance> make_deterministic_instance(
    const HardInstanceSpec& spec);
std::shared_ptr<FiniteSumInstance> make_finite_sum_instance(
    const HardInstanceSpec& spec);
std::shared_ptr<Case1Instance> make_case1_instance(int n, double L, double mu,
                                                   double Delta, int d_total);
ProblemPtr make_instance(const HardInstanceSpec& spec);

// f_i = ½xᵀA_i x + xᵀB_i y - ½yᵀC_i y + a_iᵀx - c_iᵀy.
struct QuadraticComponent {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Vec a;
  Vec c;
};

// Dense quadratic test problems with exact primal, dual and saddle point.
class QuadraticProblem final : public SaddleProblem {
 public:
  using SaddleProblem::best_response;
  using SaddleProblem::component_gradient;
  using SaddleProblem::gradient;
  using SaddleProblem::primal_gradient;
  using SaddleProblem::value;

  explicit QuadraticProblem(std::vector<QuadraticComponent> components);
  QuadraticProblem(std::vector<QuadraticComponent> components,
                   Constants constants);

  Index dim_x() const override { return mean_.A.rows(); }
  Index dim_y() const override { return mean_.C.rows(); }
  int n_components() const override {
    return static_cast<int>(components_.size());
  }
  Constants constants() const override { return constants_; }

  double value(const Vec& x, const Vec& y) const override;
  void gradient(const Vec& x, const Vec& y, Vec& gx, Vec& gy) const override;
  void component_gradient(int i, const Vec& x, const Vec& y, Vec& gx,
                          Vec& gy) const override;

  bool has_primal() const override { return primal_ok_; }
  double primal_value(const Vec& x) const override;
  void primal_gradient(const Vec& x, Vec& g) const override;
  bool has_best_response() const override { return primal_ok_; }
  void best_response(const Vec& x, Vec& y) const override;

  bool has_saddle() const { return saddle_ok_; }
  SaddlePoint saddle_point() const;
  // min_x f(x, y); requires mean A positive definite.
  double dual_value(const Vec& y) const;
  double gap(const Vec& x, const Vec& y) const;
  // Exact joint Lipschitz constant of the gradient map and exact averaged
  // smoothness constant.
  double lipschitz() const { return lipschitz_; }
  double averaged_smoothness() const { return averaged_; }
  const QuadraticComponent& mean() const { return mean_; }

 private:
  void init();

  std::vector<QuadraticComponent> components_;
  QuadraticComponent mean_;
  Constants constants_;
  bool primal_ok_ = false;
  bool saddle_ok_ = false;
  Eigen::LDLT<Eigen::MatrixXd> c_solver_;
  Eigen::LDLT<Eigen::MatrixXd> a_solver_;
  double lipschitz_ = 0.0;
  double averaged_ = 0.0;
};

// Single-component quadratic from scalar blocks a·I, b·I, c·I of dimension dim.
std::shared_ptr<QuadraticProblem> make_scalar_quadratic(int dim, double a,
                                                        double b, double c);

struct SmoothnessEstimate {
  double lipschitz = 0.0;  // max(‖Δ∇ₓ‖, ‖Δ∇ᵧ‖)/(‖Δx‖ + ‖Δy‖)
  double averaged = 0.0;   // sqrt((1/n)Σ‖Δ∇f_i‖² / ‖Δz‖²)
};

// Maximum sampled ratios over point pairs drawn around `center` at the given
// scale. Both values are lower bounds on the true constants.
SmoothnessEstimate estimate_smoothness(const SaddleProblem& problem,
                                       int sample_count, std::uint64_t seed,
                                       double scale = 1.0,
                                       const SaddlePoint* center = nullptr);

}  // namespace ncsc::instances
