#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "tvarrd/matrices.hpp"
#include "tvarrd/model.hpp"
#include "tvarrd/spectral.hpp"

using namespace tvarrd;

namespace {

TvarModel white_noise(double s2 = 1.0) { return TvarModel(0, {}, s2, "white"); }

TvarModel ar1_const(double c, double s2 = 1.0) {
  return TvarModel(1, {{c}}, s2, "ar1");
}

// Closed-form eigenvalues of a symmetric 3x3 via the trigonometric
// characteristic-polynomial solution; independent of the library solver.
std::array<double, 3> sym3_eigen_oracle(const std::array<double, 9>& a) {
  const double a11 = a[0], a12 = a[1], a13 = a[2];
  const double a22 = a[4], a23 = a[5], a33 = a[8];
  const double p1 = a12 * a12 + a13 * a13 + a23 * a23;
  std::array<double, 3> eig{};
  if (p1 == 0.0) {
    eig = {a11, a22, a33};
    std::sort(eig.begin(), eig.end());
    return eig;
  }
  const double q = (a11 + a22 + a33) / 3.0;
  const double p2 = (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) +
                    (a33 - q) * (a33 - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  // B = (A - qI)/p, r = det(B)/2
  const double b11 = (a11 - q) / p, b22 = (a22 - q) / p, b33 = (a33 - q) / p;
  const double b12 = a12 / p, b13 = a13 / p, b23 = a23 / p;
  double r = (b11 * (b22 * b33 - b23 * b23) - b12 * (b12 * b33 - b23 * b13) +
              b13 * (b12 * b23 - b22 * b13)) /
             2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double pi = std::acos(-1.0);
  eig[2] = q + 2.0 * p * std::cos(phi);
  eig[0] = q + 2.0 * p * std::cos(phi + 2.0 * pi / 3.0);
  eig[1] = 3.0 * q - eig[0] - eig[2];
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace

TEST_CASE("eigenvalues") {
  SUBCASE("scaled identity") {
    const EigenSpectrum spec = eigenvalues(build_phi_inv(white_noise(4.0), 5));
    CHECK(spec.values.size() == 5);
    for (double v : spec.values)
      CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("3x3 against the characteristic-polynomial oracle") {
    const SymBandMatrix G = build_phi_inv(ar1_const(-0.9), 3);
    // dense symmetric input for the oracle
    const std::vector<double> d = G.dense();
    const std::array<double, 9> a{d[0], d[1], d[2], d[3], d[4],
                                  d[5], d[6], d[7], d[8]};
    const std::array<double, 3> want = sym3_eigen_oracle(a);
    const EigenSpectrum spec = eigenvalues(G);
    for (int i = 0; i < 3; ++i)
      CHECK(spec.values[i] ==
            doctest::Approx(want[i]).epsilon(1e-10));
  }
  SUBCASE("wider band goes through the band reduction") {
    const TvarModel m(3, {{-0.4}, {0.2}, {-0.1}}, 1.5);
    const EigenSpectrum spec = eigenvalues(build_phi_inv(m, 24));
    CHECK(spec.values.size() == 24);
    CHECK(std::is_sorted(spec.values.begin(), spec.values.end()));
    for (double v : spec.values) CHECK(v > 0.0);  // SPD input
    // eigenvalue sum equals the trace
    const SymBandMatrix G = build_phi_inv(m, 24);
    double tr = 0.0;
    for (int i = 1; i <= 24; ++i) tr += G.at(i, i);
    double sum = 0.0;
    for (double v : spec.values) sum += v;
    CHECK(sum == doctest::Approx(tr).epsilon(1e-9));
  }
  SUBCASE("non-finite entries rejected") {
    SymBandMatrix G = build_phi_inv(ar1_const(-0.5), 4);
    G.bands[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eigenvalues(G), std::invalid_argument);
  }
}

TEST_CASE("eigenvalue sum and product identities") {
  // sum = trace; product = det(phi_inv) = sigma^{-2n} since det A = 1
  for (double s2 : {0.5, 2.0}) {
    for (int M : {0, 1, 2}) {
      std::vector<std::vector<double>> coeffs;
      for (int m = 1; m <= M; ++m) coeffs.push_back({-0.3 / m, 0.1});
      const TvarModel m(M, coeffs, s2);
      const int n = 64;
      const SymBandMatrix G = build_phi_inv(m, n);
      const EigenSpectrum spec = eigenvalues(G);
      double tr = 0.0;
      for (int i = 1; i <= n; ++i) tr += G.at(i, i);
      double sum = 0.0, log_det = 0.0;
      for (double v : spec.values) {
        sum += v;
        log_det += std::log(v);
      }
      CHECK(sum == doctest::Approx(tr).epsilon(1e-9));
      const double want = -n * std::log(s2);
      CHECK(std::abs(log_det - want) <=
            1e-6 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("eigenvalues concentrate on the range of g") {
  const TvarModel m = ar1_const(-0.9);
  const SpectrumGrid grid = sample_spectrum(m, 3, 513);
  const double lo = grid.g_min * 0.9;
  const double hi = grid.g_max * 1.1;
  std::vector<double> fraction;
  for (int n : {128, 256, 512, 1024}) {
    const EigenSpectrum spec = eigenvalues(build_phi_inv(m, n));
    int outside = 0;
    for (double v : spec.values)
      if (v < lo || v > hi) ++outside;
    CHECK(outside <= 2);  // at most a boundary effect
    fraction.push_back(static_cast<double>(outside) / n);
  }
  int violations = 0;
  for (std::size_t i = 1; i < fraction.size(); ++i)
    if (fraction[i] > fraction[i - 1] + 1e-12) ++violations;
  CHECK(violations <= 1);
  CHECK(fraction.back() <= 0.02);
}

TEST_CASE("moment_check") {
  QuadConfig quad;

  SUBCASE("k = 0: both sides are 1") {
    const MomentReport rep = moment_check(ar1_const(-0.9), 32, 0, quad);
    CHECK(rep.trace_avg == 1.0);
    CHECK(rep.integral == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.rel_err <= 1e-13);
  }
  SUBCASE("k = 1, constant AR(1): both sides near 1 + c^2") {
    const double c = -0.9;
    const int n = 2048;
    const MomentReport rep = moment_check(ar1_const(c), n, 1, quad);
    // trace average is exactly 1 + c^2 - c^2/n
    CHECK(rep.trace_avg ==
          doctest::Approx(1.0 + c * c - c * c / n).epsilon(1e-12));
    CHECK(rep.integral == doctest::Approx(1.0 + c * c).epsilon(1e-10));
    CHECK(rep.rel_err <= 1e-2);
  }
  SUBCASE("k = 1, ramp a_1(r) = c r: integral is 1 + c^2/3") {
    const double c = -0.9;
    const TvarModel m(1, {{0.0, c}}, 1.0);
    const MomentReport rep = moment_check(m, 512, 1, quad);
    CHECK(rep.integral ==
          doctest::Approx(1.0 + c * c / 3.0).epsilon(1e-10));
    CHECK(rep.rel_err <= 1e-2);
  }
  SUBCASE("rel_err non-increasing on a doubling ladder (k = 1, 2)") {
    const TvarModel m(1, {{-0.5, -0.4}}, 1.0);
    for (int k : {1, 2}) {
      std::vector<double> errs;
      for (int n : {128, 256, 512, 1024})
        errs.push_back(moment_check(m, n, k, quad).rel_err);
      int violations = 0;
      for (std::size_t i = 1; i < errs.size(); ++i)
        if (errs[i] > errs[i - 1] + 1e-15) ++violations;
      CAPTURE(k);
      CHECK(violations <= 1);
    }
  }
  CHECK_THROWS_AS(moment_check(white_noise(), 8, -1, quad), std::domain_error);
}

TEST_CASE("weak_norm_check matches the k = 2 moment") {
  QuadConfig quad;
  SUBCASE("white noise: both norms are 1") {
    const WeakNormReport rep = weak_norm_check(white_noise(1.0), 16, quad);
    CHECK(rep.trace_norm == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rep.integral_norm == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("AR(1) at n = 2048: sides agree to 1e-2 relative") {
    const WeakNormReport rep = weak_norm_check(ar1_const(-0.9), 2048, quad);
    CHECK(rep.rel_err <= 1e-2);
  }
  SUBCASE("consistency with moment_check at k = 2") {
    const TvarModel m = ar1_const(-0.6);
    const WeakNormReport wn = weak_norm_check(m, 64, quad);
    const MomentReport m2 = moment_check(m, 64, 2, quad);
    CHECK(wn.trace_norm * wn.trace_norm ==
          doctest::Approx(m2.trace_avg).epsilon(1e-14));
    CHECK(wn.integral_norm * wn.integral_norm ==
          doctest::Approx(m2.integral).epsilon(1e-14));
  }
}

TEST_CASE("covariance_mc_check") {
  SUBCASE("white noise, n = 4") {
    const CovarianceMcReport rep =
        covariance_mc_check(white_noise(1.0), 4, 200000, 991);
    CHECK(rep.pass);
    CHECK(rep.max_abs_dev <= 0.02);
  }
  SUBCASE("AR(1), n = 8") {
    const CovarianceMcReport rep =
        covariance_mc_check(ar1_const(-0.9), 8, 50000, 1234);
    CHECK(rep.pass);
  }
  SUBCASE("same seed gives the identical report") {
    const CovarianceMcReport a =
        covariance_mc_check(ar1_const(-0.9), 6, 20000, 5);
    const CovarianceMcReport b =
        covariance_mc_check(ar1_const(-0.9), 6, 20000, 5);
    CHECK(a.max_abs_dev == b.max_abs_dev);
    CHECK(a.max_normalized_dev == b.max_normalized_dev);
  }
}
