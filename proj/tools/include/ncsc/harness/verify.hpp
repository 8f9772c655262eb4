#pragma once

#include <string>
#include <vector>

namespace ncsc::harness {

struct Property {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Gradient checks, primal identities, zero-chain exactness, smoothness
// bounds, solver convergence, lower-bound floors and I/O round trips.
std::vector<Property> run_properties();

std::string format_properties(const std::vector<Property>& properties);
bool all_passed(const std::vector<Property>& properties);

}  // namespace ncsc::harness
