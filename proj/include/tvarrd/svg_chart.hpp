#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tvarrd {

// Minimal deterministic SVG line chart: fixed canvas, nice-number ticks, one
// polyline per series, legend in the top-right corner.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

std::string render_line_chart(const std::vector<ChartSeries>& series,
                              const std::string& x_label,
                              const std::string& y_label);

}  // namespace tvarrd
