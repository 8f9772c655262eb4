#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncsc/metrics.hpp"

namespace ncsc::harness {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // positive (x, y)
  std::optional<metrics::LinearFit> fit;         // natural-log coordinates, as fit_scaling
};

struct PlotLabels {
  std::string title;
  std::string x;
  std::string y;
};

// Log-log scatter with optional fitted lines. Non-positive points are skipped.
std::string loglog_svg(const std::vector<PlotSeries>& series,
                       const PlotLabels& labels);

}  // namespace ncsc::harness
