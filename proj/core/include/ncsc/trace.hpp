#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace ncsc::metrics {

struct TraceRow {
  std::uint64_t calls = 0;  // cumulative oracle units
  std::uint64_t outer = 0;
  double grad_phi_norm = std::numeric_limits<double>::quiet_NaN();
  double grad_norm_sq = std::numeric_limits<double>::quiet_NaN();
  double wall_ms = 0.0;
};

// Rows are appended with strictly increasing cumulative call counts.
struct RunTrace {
  std::vector<TraceRow> rows;

  void add(const TraceRow& row) {
    if (!rows.empty() && row.calls <= rows.back().calls) {
      rows.back() = row;
      return;
    }
    rows.push_back(row);
  }
  bool empty() const { return rows.empty(); }
};

}  // namespace ncsc::metrics
