#pragma once

#include <cstdint>
#include <vector>

#include "tvarrd/matrices.hpp"
#include "tvarrd/model.hpp"
#include "tvarrd/quadrature.hpp"

namespace tvarrd {

struct EigenSpectrum {
  std::vector<double> values;  // ascending
  // A priori normalized backward-error bound of the solver (eigenvalues are
  // exact for some G + E with ||E|| <= residual * ||G||).
  double residual = 0.0;
};

// All eigenvalues of a symmetric band matrix.  Bandwidth <= 1 goes straight
// to the tridiagonal QL/QR path; wider bands are reduced first.  Throws
// std::invalid_argument on non-finite entries.
EigenSpectrum eigenvalues(const SymBandMatrix& matrix);

// Comparison of the averaged eigenvalue moment against the double integral of
// the matching power of g.
struct MomentReport {
  int n = 0;
  int k = 0;
  double trace_avg = 0.0;  // (1/n) sum alpha^k, from the spectrum
  double integral = 0.0;   // (1/2pi) iint g^k dr dw
  double abs_err = 0.0;
  double rel_err = 0.0;    // abs_err / max(|integral|, tiny)
};

MomentReport moment_check(const TvarModel& model, int n, int k,
                          const QuadConfig& quad = {});

// sqrt((1/n) sum alpha^2) against sqrt((1/2pi) iint g^2); the squared
// quantities are exactly the k=2 moment pair.
struct WeakNormReport {
  int n = 0;
  double trace_norm = 0.0;
  double integral_norm = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

WeakNormReport weak_norm_check(const TvarModel& model, int n,
                               const QuadConfig& quad = {});

// Empirical covariance of simulated paths against the exact covariance.  The
// per-entry Monte-Carlo standard error is sqrt((phi_ii phi_jj + phi_ij^2)/P);
// the check passes when every deviation stays within z_threshold of it.
struct CovarianceMcReport {
  int n = 0;
  int num_paths = 0;
  std::uint64_t seed = 0;
  double max_abs_dev = 0.0;
  double max_normalized_dev = 0.0;  // max |dev| / standard error
  double z_threshold = 0.0;
  bool pass = false;
};

CovarianceMcReport covariance_mc_check(const TvarModel& model, int n,
                                       int num_paths, std::uint64_t seed,
                                       double z_threshold = 5.0);

}  // namespace tvarrd
