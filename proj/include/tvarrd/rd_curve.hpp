#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tvarrd {

// One reverse water-filling point.  Rates are nats per letter throughout the
// library; bits appear only at output time.  d_err / r_err carry quadrature
// error estimates on the asymptotic path and are 0 for finite-n points.
struct RdPoint {
  double theta = 0.0;
  double distortion = 0.0;
  double rate = 0.0;
  double d_err = 0.0;
  double r_err = 0.0;
  bool converged = true;
};

struct RdCurve {
  std::vector<RdPoint> points;  // sorted by distortion ascending
  double d_max = 0.0;           // distortion at which the rate first reaches 0
  std::string source_tag;       // e.g. "finite n=1024" or "asymptotic 16x32x4"
};

struct CurveShapeReport {
  bool monotone = false;  // distortion nondecreasing, rate strictly decreasing
                          // (to slack) until it reaches 0
  bool convex = false;    // midpoint chord on or above the curve
  std::string message;

  bool ok() const { return monotone && convex; }
};

// Shape checks over the converged points of a curve.
CurveShapeReport check_curve_shape(const RdCurve& curve,
                                   double mono_slack = 1e-12,
                                   double convex_slack = 1e-9);

// num_points geometrically spaced values on [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, int num_points);

// Requested distortion above the zero-rate point; carries the reachable d_max.
class DistortionRangeError : public std::runtime_error {
 public:
  DistortionRangeError(const std::string& msg, double d_max_)
      : std::runtime_error(msg), d_max(d_max_) {}

  double d_max;
};

}  // namespace tvarrd
