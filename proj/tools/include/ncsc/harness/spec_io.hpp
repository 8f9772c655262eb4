#pragma once

#include <filesystem>
#include <string>

#include "ncsc/instances.hpp"

namespace ncsc::harness {

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Flat "key = value" text. Primary keys (mode, L, mu, Delta, epsilon, n and
// optionally d_override) determine the instance; derived keys are written for
// reference and checked for consistency on read.
std::string format_spec(const instances::HardInstanceSpec& spec);
instances::HardInstanceSpec parse_spec(const std::string& text);

void write_spec(const instances::HardInstanceSpec& spec,
                const std::filesystem::path& path);
instances::HardInstanceSpec read_spec(const std::filesystem::path& path);

}  // namespace ncsc::harness
