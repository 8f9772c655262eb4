#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace ncsc::harness {

inline constexpr std::array<const char*, 11> kCsvColumns = {
    "suite",   "instance_id", "solver",        "seed",        "kappa",  "n",
    "epsilon", "oracle_calls", "grad_phi_norm", "moreau_norm", "wall_ms"};

struct CsvRow {
  std::string suite;
  std::string instance_id;
  std::string solver;
  std::uint64_t seed = 0;
  double kappa = 0.0;
  int n = 1;
  double epsilon = 0.0;
  std::uint64_t oracle_calls = 0;
  double grad_phi_norm = std::numeric_limits<double>::quiet_NaN();
  double moreau_norm = std::numeric_limits<double>::quiet_NaN();
  double wall_ms = 0.0;
};

// Reals are written as %.17e, NaN as "nan".
std::string format_csv(const std::vector<CsvRow>& rows);
std::vector<CsvRow> parse_csv(const std::string& text);

void write_csv(const std::vector<CsvRow>& rows, const std::filesystem::path& path);
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

// Bitwise comparison treating NaN fields as equal.
bool same_row(const CsvRow& a, const CsvRow& b);

}  // namespace ncsc::harness
