#include "tvarrd/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tvarrd {

namespace {

double ipow(double base, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= base;
  return v;
}

double neumaier_sum(const std::vector<double>& xs) {
  detail::Accumulator acc;
  for (double x : xs) acc.add(x);
  return acc.total();
}

}  // namespace

EigenSpectrum eigenvalues(const SymBandMatrix& matrix) {
  const int n = matrix.n;
  if (n < 1) throw std::invalid_argument("eigenvalues: empty matrix");
  for (double v : matrix.bands)
    if (!std::isfinite(v))
      throw std::invalid_argument("eigenvalues: non-finite matrix entry");

  EigenSpectrum spec;
  spec.values.resize(n);
  lapack_int info = 0;
  if (matrix.bandwidth <= 1) {
    // Already tridiagonal: straight QL/QR on (diag, off-diag).
    std::vector<double> off(std::max(n - 1, 1), 0.0);
    for (int i = 0; i < n; ++i) spec.values[i] = matrix.bands[i];
    if (matrix.bandwidth == 1)
      for (int i = 0; i < n - 1; ++i)
        off[i] = matrix.bands[static_cast<std::size_t>(n) + i];
    info = LAPACKE_dsterf(n, spec.values.data(), off.data());
  } else {
    const int kd = matrix.bandwidth;
    const int ldab = kd + 1;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    // Column-major lower band storage: ab[j*ldab + d] = entry(j+1, j+1+d).
    for (int d = 0; d <= kd; ++d)
      for (int j = 0; j + d < n; ++j)
        ab[static_cast<std::size_t>(j) * ldab + d] =
            matrix.bands[static_cast<std::size_t>(d) * n + j];
    double z = 0.0;
    info = LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab.data(), ldab,
                         spec.values.data(), &z, 1);
  }
  if (info != 0)
    throw std::runtime_error("symmetric eigensolver failed to converge");
  spec.residual = n * std::numeric_limits<double>::epsilon();
  return spec;
}

MomentReport moment_check(const TvarModel& model, int n, int k,
                          const QuadConfig& quad) {
  if (k < 0) throw std::domain_error("moment order k must be >= 0");
  const EigenSpectrum spec = eigenvalues(build_phi_inv(model, n));

  std::vector<double> powers(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i)
    powers[i] = ipow(spec.values[i], k);

  MomentReport rep;
  rep.n = n;
  rep.k = k;
  rep.trace_avg = neumaier_sum(powers) / n;

  // (1/2pi) over [-pi,pi] equals (1/pi) over [0,pi] by evenness of g.
  const auto est = integrate_2d<1>(
      [&](double r, double w) -> std::array<double, 1> {
        return {ipow(eval_g(model, r, w), k)};
      },
      0.0, 1.0, 0.0, kPi, quad);
  rep.integral = est.value[0] / kPi;
  rep.abs_err = std::abs(rep.trace_avg - rep.integral);
  rep.rel_err = rep.abs_err /
                std::max(std::abs(rep.integral),
                         std::numeric_limits<double>::min());
  return rep;
}

WeakNormReport weak_norm_check(const TvarModel& model, int n,
                               const QuadConfig& quad) {
  const MomentReport m2 = moment_check(model, n, 2, quad);
  WeakNormReport rep;
  rep.n = n;
  rep.trace_norm = std::sqrt(m2.trace_avg);
  rep.integral_norm = std::sqrt(m2.integral);
  rep.abs_err = std::abs(rep.trace_norm - rep.integral_norm);
  rep.rel_err = rep.abs_err /
                std::max(std::abs(rep.integral_norm),
                         std::numeric_limits<double>::min());
  return rep;
}

CovarianceMcReport covariance_mc_check(const TvarModel& model, int n,
                                       int num_paths, std::uint64_t seed,
                                       double z_threshold) {
  if (num_paths < 2)
    throw std::invalid_argument("covariance_mc_check needs num_paths >= 2");
  const SamplePaths sp = simulate(model, n, num_paths, seed);
  const std::vector<double> phi = build_phi(model, n);

  CovarianceMcReport rep;
  rep.n = n;
  rep.num_paths = num_paths;
  rep.seed = seed;
  rep.z_threshold = z_threshold;
  rep.max_abs_dev = 0.0;
  rep.max_normalized_dev = 0.0;
  // The process is zero-mean by construction, so raw second moments estimate
  // the covariance.  Var(x_i x_j) = phi_ii phi_jj + phi_ij^2 for jointly
  // Gaussian zero-mean pairs.
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int p = 0; p < num_paths; ++p) s += sp.at(p, i) * sp.at(p, j);
      const double emp = s / num_paths;
      const double pii = phi[static_cast<std::size_t>(i) * n + i];
      const double pjj = phi[static_cast<std::size_t>(j) * n + j];
      const double pij = phi[static_cast<std::size_t>(i) * n + j];
      const double dev = std::abs(emp - pij);
      const double se = std::sqrt((pii * pjj + pij * pij) / num_paths);
      rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
      rep.max_normalized_dev = std::max(rep.max_normalized_dev, dev / se);
    }
  }
  rep.pass = rep.max_normalized_dev <= z_threshold;
  return rep;
}

}  // namespace tvarrd
