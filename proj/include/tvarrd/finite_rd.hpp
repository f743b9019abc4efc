#pragma once

#include "tvarrd/model.hpp"
#include "tvarrd/rd_curve.hpp"
#include "tvarrd/spectral.hpp"

namespace tvarrd {

// Reverse water-filling over the n eigenvalues alpha_m of the inverse
// autocorrelation matrix:
//
//   D(theta) = (1/n) sum_m min(theta, 1/alpha_m)
//   R(theta) = (1/n) sum_m max(0, (1/2) ln(1/(theta alpha_m)))
//
// Requires theta > 0 (std::domain_error otherwise).
RdPoint finite_rd_point(const EigenSpectrum& spectrum, double theta);

// Sweeps theta geometrically over [1e-3 / alpha_max, 1 / alpha_min]: the low
// end gives near-zero distortion, the high end saturates the rate to 0.
RdCurve finite_rd_curve(const TvarModel& model, int n, int num_points);

// Bisection on the continuous nondecreasing D(theta) until
// |D - d_target| <= 1e-10 * max(1, d_target).  Throws DistortionRangeError
// when d_target exceeds the zero-rate distortion, std::domain_error when
// d_target <= 0.
RdPoint finite_rate_at_distortion(const EigenSpectrum& spectrum,
                                  double d_target);
RdPoint finite_rate_at_distortion(const TvarModel& model, int n,
                                  double d_target);

}  // namespace tvarrd
