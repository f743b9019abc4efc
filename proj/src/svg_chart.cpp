#include "tvarrd/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace tvarrd {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 24;
constexpr int kMarginBottom = 52;

const char* const kPalette[] = {"#1b6ca8", "#d1495b", "#2e933c",
                                "#e09f3e", "#6a4c93", "#50514f"};
constexpr int kPaletteSize = 6;

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

// Round the raw span to a 1/2/5 ladder so tick labels come out clean.
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(target_ticks, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm <= 1.0)
    step = 1.0;
  else if (norm <= 2.0)
    step = 2.0;
  else if (norm <= 5.0)
    step = 5.0;
  else
    step = 10.0;
  return step * mag;
}

struct Axis {
  double lo = 0.0, hi = 1.0, step = 0.25;
};

Axis make_axis(double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1.0;
  Axis ax;
  ax.step = nice_step(hi - lo, 5);
  ax.lo = std::floor(lo / ax.step) * ax.step;
  ax.hi = std::ceil(hi / ax.step) * ax.step;
  if (ax.hi <= ax.lo) ax.hi = ax.lo + ax.step;
  return ax;
}

}  // namespace

std::string render_line_chart(const std::vector<ChartSeries>& series,
                              const std::string& x_label,
                              const std::string& y_label) {
  if (series.empty())
    throw std::invalid_argument("render_line_chart needs at least one series");

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const ChartSeries& s : series)
    for (const auto& [x, y] : s.points) {
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  if (!std::isfinite(xlo) || !std::isfinite(ylo))
    throw std::invalid_argument("render_line_chart needs nonempty series");

  const Axis xa = make_axis(xlo, xhi);
  const Axis ya = make_axis(ylo, yhi);
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + plot_w * (x - xa.lo) / (xa.hi - xa.lo);
  };
  auto py = [&](double y) {
    return kMarginTop + plot_h * (1.0 - (y - ya.lo) / (ya.hi - ya.lo));
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Grid and tick labels.
  for (double x = xa.lo; x <= xa.hi + 0.5 * xa.step; x += xa.step) {
    const std::string X = fmt(px(x));
    svg += "<line x1=\"" + X + "\" y1=\"" + fmt(py(ya.lo)) + "\" x2=\"" + X +
           "\" y2=\"" + fmt(py(ya.hi)) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + X + "\" y=\"" + fmt(py(ya.lo) + 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">" + fmt(x, "%g") + "</text>\n";
  }
  for (double y = ya.lo; y <= ya.hi + 0.5 * ya.step; y += ya.step) {
    const std::string Y = fmt(py(y));
    svg += "<line x1=\"" + fmt(px(xa.lo)) + "\" y1=\"" + Y + "\" x2=\"" +
           fmt(px(xa.hi)) + "\" y2=\"" + Y + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt(px(xa.lo) - 8.0) + "\" y=\"" + fmt(py(y) + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\">" + fmt(y, "%g") + "</text>\n";
  }

  // Frame.
  svg += "<rect x=\"" + fmt(px(xa.lo)) + "\" y=\"" + fmt(py(ya.hi)) +
         "\" width=\"" + fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Axis labels.
  svg += "<text x=\"" + fmt(kMarginLeft + plot_w / 2.0) + "\" y=\"" +
         fmt(kHeight - 12.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\">" + xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt(kMarginTop + plot_h / 2.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt(kMarginTop + plot_h / 2.0) + ")\">" + xml_escape(y_label) +
         "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    std::string pts;
    for (const auto& [x, y] : series[i].points) {
      if (!pts.empty()) pts += ' ';
      pts += fmt(px(x)) + "," + fmt(py(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
  }

  // Legend, top-right.
  const double lx = kWidth - kMarginRight - 210.0;
  double ly = kMarginTop + 14.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4.0) + "\" x2=\"" +
           fmt(lx + 26.0) + "\" y2=\"" + fmt(ly - 4.0) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(lx + 32.0) + "\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(series[i].label) + "</text>\n";
    ly += 18.0;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace tvarrd
