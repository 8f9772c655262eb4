#include <cmath>

#include "ncsc/instances.hpp"

namespace ncsc::instances {

ChainMatrix::ChainMatrix(int d, double alpha) : d_(d), alpha_(alpha) {
  if (d < 1) throw InvalidSpecError("chain dimension d must be >= 1");
  if (!(alpha > 0) || alpha > 1)
    throw InvalidSpecError("chain parameter alpha must lie in (0, 1]");
  alpha_quarter_ = std::exp(0.25 * std::log(alpha));
}

void ChainMatrix::apply(const Eigen::Ref<const Vec>& x,
                        Eigen::Ref<Vec> out) const {
  if (x.size() != cols() || out.size() != rows())
    throw DimensionError("chain apply: dimension mismatch");
  const int d = d_;
  out[0] = x[d];
  for (int r = 1; r <= d; ++r) out[r] = x[d - r] - x[d - r + 1];
  out[d + 1] = alpha_quarter_ * x[0];
}

void ChainMatrix::apply_t(const Eigen::Ref<const Vec>& y,
                          Eigen::Ref<Vec> out) const {
  if (y.size() != rows() || out.size() != cols())
    throw DimensionError("chain apply_t: dimension mismatch");
  const int d = d_;
  // Column j collects +y_{d-j} (j < d) and -y_{d-j+1} (j >= 1).
  out[0] = y[d] + alpha_quarter_ * y[d + 1];
  for (int j = 1; j < d; ++j) out[j] = y[d - j] - y[d - j + 1];
  out[d] = y[0] - y[1];
}

Vec ChainMatrix::apply(const Vec& x) const {
  Vec out(rows());
  apply(x, out);
  return out;
}

Vec ChainMatrix::apply_t(const Vec& y) const {
  Vec out(cols());
  apply_t(y, out);
  return out;
}

Eigen::MatrixXd ChainMatrix::dense() const {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(rows(), cols());
  for (Index j = 0; j < cols(); ++j) B.col(j) = apply(Vec::Unit(cols(), j));
  return B;
}

Eigen::MatrixXd chain_quadratic(int d, double alpha) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (int i = 0; i <= d; ++i) {
    A(i, i) = (i == 0) ? 1.0 + std::sqrt(alpha) : (i == d ? 1.0 : 2.0);
    if (i < d) A(i, i + 1) = A(i + 1, i) = -1.0;
  }
  return A;
}

}  // namespace ncsc::instances
