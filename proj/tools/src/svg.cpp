#include "ncsc/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ncsc::harness {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string loglog_svg(const std::vector<PlotSeries>& series,
                       const PlotLabels& labels) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      if (!(x > 0 && y > 0) || !std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, std::log10(x));
      x1 = std::max(x1, std::log10(x));
      y0 = std::min(y0, std::log10(y));
      y1 = std::max(y1, std::log10(y));
    }
  if (!std::isfinite(x0)) {
    x0 = y0 = 0;
    x1 = y1 = 1;
  }
  x0 = std::floor(x0);
  x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0);
  y1 = std::max(std::ceil(y1), y0 + 1);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * pw; };
  auto py = [&](double ly) { return kTop + (y1 - ly) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<clipPath id=\"plot\"><rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop)
     << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph) << "\"/></clipPath>\n";
  os << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-size=\"14\">" << escape(labels.title) << "</text>\n";

  for (int e = static_cast<int>(x0); e <= static_cast<int>(x1); ++e) {
    const double x = px(e);
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(x)
       << "\" y2=\"" << fmt(kTop + ph) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18)
       << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(y0); e <= static_cast<int>(y1); ++e) {
    const double y = py(e);
    os << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
       << fmt(kLeft + pw) << "\" y2=\"" << fmt(y) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4)
       << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  os << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw)
     << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 16)
     << "\" text-anchor=\"middle\">" << escape(labels.x) << "</text>\n";
  os << "<text x=\"20\" y=\"" << fmt(kTop + ph / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << fmt(kTop + ph / 2)
     << ")\">" << escape(labels.y) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    for (auto [x, y] : s.points) {
      if (!(x > 0 && y > 0) || !std::isfinite(x) || !std::isfinite(y)) continue;
      os << "<circle cx=\"" << fmt(px(std::log10(x))) << "\" cy=\""
         << fmt(py(std::log10(y))) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    }
    std::string legend = s.label;
    if (s.fit) {
      const double c = s.fit->intercept / std::log(10.0);
      os << "<line x1=\"" << fmt(px(x0)) << "\" y1=\"" << fmt(py(c + s.fit->slope * x0))
         << "\" x2=\"" << fmt(px(x1)) << "\" y2=\"" << fmt(py(c + s.fit->slope * x1))
         << "\" stroke=\"" << color
         << "\" stroke-dasharray=\"6 4\" clip-path=\"url(#plot)\"/>\n";
      legend += " (slope " + fmt(s.fit->slope) + ")";
    }
    const double ly = kTop + 16 + 20 * static_cast<double>(i);
    os << "<circle cx=\"" << fmt(kLeft + pw + 16) << "\" cy=\"" << fmt(ly - 4)
       << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    os << "<text x=\"" << fmt(kLeft + pw + 26) << "\" y=\"" << fmt(ly) << "\">"
       << escape(legend) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ncsc::harness
