#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "tvarrd/model.hpp"
#include "tvarrd/quadrature.hpp"
#include "tvarrd/rd_curve.hpp"

namespace tvarrd {

// Thrown by the asymptotic operations when the model fails the g-floor check.
class ModelValidationError : public std::runtime_error {
 public:
  ModelValidationError(const std::string& msg, ValidationReport report_)
      : std::runtime_error(msg), report(std::move(report_)) {}

  ValidationReport report;
};

// Tabulated power spectral density on [-pi, pi]; evaluation between nodes is
// piecewise linear.  With even_symmetry set, construction rejects tables
// whose values are not even in omega.
struct PsdGrid {
  std::vector<double> omega_nodes;  // strictly ascending in [-pi, pi]
  std::vector<double> values;       // S(omega) >= 0
  bool even_symmetry = false;

  PsdGrid(std::vector<double> omega_nodes_, std::vector<double> values_,
          bool even_symmetry_ = false);

  double operator()(double omega) const;  // clamps to the end nodes
};

// Limiting rate-distortion point of the TVAR source:
//
//   D(theta) = (1/2pi) iint min[theta, 1/g(r,w)] dr dw
//   R(theta) = (1/2pi) iint max[0, (1/2) ln(1/(theta g(r,w)))] dr dw
//
// integrated over r in [0,1] and, using the evenness of g in w, over
// [0, pi] doubled.  Requires theta > 0 and a model passing validate;
// refinement exhaustion raises QuadratureError with the last two estimates.
RdPoint asymptotic_rd_point(const TvarModel& model, double theta,
                            const QuadConfig& quad = {});

// theta swept geometrically over [1e-3 / g_max, 1.001 / g_min] with the grid
// extrema of the validation spectrum; points whose quadrature exhausts the
// budget are annotated (converged = false), not dropped.
RdCurve asymptotic_rd_curve(const TvarModel& model, int num_points,
                            const QuadConfig& quad = {});

// Bisection on the monotone D(theta); stops when |D - d_target| is within
// max(1e-8, 10 * quadrature error estimate).
RdPoint asymptotic_rate_at_distortion(const TvarModel& model, double d_target,
                                      const QuadConfig& quad = {});

// Zero-rate distortion (1/2pi) iint 1/g dr dw: the per-letter average source
// variance in the limit.
double d_max(const TvarModel& model, const QuadConfig& quad = {});

// Stationary special case
//
//   D(theta) = (1/2pi) int min[theta, S(w)] dw
//   R(theta) = (1/2pi) int max[0, (1/2) ln(S(w)/theta)] dw
//
// for a PSD given as a function (assumed even in omega; shares the quadrature
// machinery of the TVAR path so the two coincide when S = 1/g for a model
// with time-constant coefficients).
RdPoint stationary_rd_point(const std::function<double(double)>& psd,
                            double theta, const QuadConfig& quad = {});

// Same for a tabulated PSD; the piecewise-linear interpolant is integrated
// over [-pi, pi] (no symmetry assumption on the table).
RdPoint stationary_rd_point(const PsdGrid& psd, double theta,
                            const QuadConfig& quad = {});

}  // namespace tvarrd
