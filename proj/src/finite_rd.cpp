#include "tvarrd/finite_rd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tvarrd {

RdPoint finite_rd_point(const EigenSpectrum& spectrum, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("theta must be > 0");
  const std::size_t n = spectrum.values.size();
  if (n == 0) throw std::invalid_argument("empty spectrum");
  detail::Accumulator dist;
  detail::Accumulator rate;
  for (double alpha : spectrum.values) {
    dist.add(std::min(theta, 1.0 / alpha));
    const double r = 0.5 * std::log(1.0 / (theta * alpha));
    if (r > 0.0) rate.add(r);
  }
  RdPoint p;
  p.theta = theta;
  p.distortion = dist.total() / static_cast<double>(n);
  p.rate = rate.total() / static_cast<double>(n);
  return p;
}

namespace {

double zero_rate_distortion(const EigenSpectrum& spectrum) {
  detail::Accumulator acc;
  for (double alpha : spectrum.values) acc.add(1.0 / alpha);
  return acc.total() / static_cast<double>(spectrum.values.size());
}

}  // namespace

RdCurve finite_rd_curve(const TvarModel& model, int n, int num_points) {
  if (num_points < 2)
    throw std::invalid_argument("finite_rd_curve needs num_points >= 2");
  const EigenSpectrum spec = eigenvalues(build_phi_inv(model, n));
  const double alpha_min = spec.values.front();
  const double alpha_max = spec.values.back();
  RdCurve curve;
  curve.source_tag = "finite n=" + std::to_string(n);
  // A few ulps past 1/alpha_min so the final rate saturates to exactly 0
  // despite the rounding of the reciprocal.
  const double theta_hi =
      (1.0 / alpha_min) * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
  for (double theta : geometric_grid(1e-3 / alpha_max, theta_hi, num_points))
    curve.points.push_back(finite_rd_point(spec, theta));
  curve.d_max = curve.points.back().distortion;
  for (const RdPoint& p : curve.points)
    if (p.rate <= 0.0) {
      curve.d_max = p.distortion;
      break;
    }
  const CurveShapeReport shape = check_curve_shape(curve);
  if (!shape.ok())
    throw std::logic_error("finite_rd_curve shape check failed: " +
                           shape.message);
  return curve;
}

RdPoint finite_rate_at_distortion(const EigenSpectrum& spectrum,
                                  double d_target) {
  if (!(d_target > 0.0)) throw std::domain_error("d_target must be > 0");
  const double dmax = zero_rate_distortion(spectrum);
  if (d_target > dmax)
    throw DistortionRangeError(
        "d_target exceeds the zero-rate distortion " + std::to_string(dmax),
        dmax);
  const double tol = 1e-10 * std::max(1.0, d_target);
  // D(theta) <= theta, so theta = d_target brackets from below; the zero-rate
  // level brackets from above.
  double lo = d_target;
  double hi = 1.0 / spectrum.values.front();
  if (hi < lo) hi = lo;
  RdPoint p = finite_rd_point(spectrum, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    p = finite_rd_point(spectrum, mid);
    if (std::abs(p.distortion - d_target) <= tol) return p;
    if (p.distortion < d_target)
      lo = mid;
    else
      hi = mid;
  }
  return p;
}

RdPoint finite_rate_at_distortion(const TvarModel& model, int n,
                                  double d_target) {
  return finite_rate_at_distortion(eigenvalues(build_phi_inv(model, n)),
                                   d_target);
}

}  // namespace tvarrd
