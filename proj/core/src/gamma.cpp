#include <cmath>
#include <numbers>

#include "ncsc/instances.hpp"

namespace ncsc::instances {

namespace {
const double kGammaShift = -0.5 - 0.5 * std::log(2.0) + std::numbers::pi / 4;
}

double gamma(double x) {
  return 120.0 * (0.5 * x * x - x - 0.5 * std::log1p(x * x) + std::atan(x) -
                  kGammaShift);
}

double gamma_prime(double x) {
  return 120.0 * x * x * (x - 1.0) / (1.0 + x * x);
}

}  // namespace ncsc::instances
