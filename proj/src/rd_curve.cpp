#include "tvarrd/rd_curve.hpp"

#include <cmath>
#include <cstdio>

namespace tvarrd {

CurveShapeReport check_curve_shape(const RdCurve& curve, double mono_slack,
                                   double convex_slack) {
  CurveShapeReport rep;
  rep.monotone = true;
  rep.convex = true;

  std::vector<const RdPoint*> pts;
  pts.reserve(curve.points.size());
  for (const RdPoint& p : curve.points)
    if (p.converged) pts.push_back(&p);

  auto fail = [&rep](bool& flag, const char* fmt, std::size_t i) {
    flag = false;
    if (rep.message.empty()) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), fmt, i);
      rep.message = buf;
    }
  };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const RdPoint& a = *pts[i];
    const RdPoint& b = *pts[i + 1];
    if (b.distortion < a.distortion - mono_slack)
      fail(rep.monotone, "distortion decreases at point %zu", i + 1);
    if (b.rate > a.rate + mono_slack)
      fail(rep.monotone, "rate increases at point %zu", i + 1);
    // Strictly decreasing while positive: a plateau of positive rates is a
    // shape defect, a tail of exact zeros is not.
    if (a.rate > mono_slack && b.rate >= a.rate)
      fail(rep.monotone, "rate stalls before reaching 0 at point %zu", i + 1);
  }

  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    const RdPoint& a = *pts[i];
    const RdPoint& b = *pts[i + 1];
    const RdPoint& c = *pts[i + 2];
    const double span = c.distortion - a.distortion;
    if (span <= 0.0) continue;
    const double t = (b.distortion - a.distortion) / span;
    const double chord = a.rate + t * (c.rate - a.rate);
    if (chord < b.rate - convex_slack)
      fail(rep.convex, "midpoint chord dips below the curve at point %zu",
           i + 1);
  }
  if (rep.ok()) rep.message = "ok";
  return rep;
}

std::vector<double> geometric_grid(double lo, double hi, int num_points) {
  if (!(lo > 0.0) || !(hi > 0.0) || hi < lo)
    throw std::invalid_argument("geometric_grid needs 0 < lo <= hi");
  if (num_points < 2)
    throw std::invalid_argument("geometric_grid needs num_points >= 2");
  std::vector<double> grid(num_points);
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < num_points; ++i)
    grid[i] = lo * std::exp(ratio * i / (num_points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace tvarrd
