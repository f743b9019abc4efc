#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "tvarrd/matrices.hpp"
#include "tvarrd/model.hpp"

using namespace tvarrd;

namespace {

TvarModel ar1_const(double c, double s2 = 1.0) {
  return TvarModel(1, {{c}}, s2, "ar1");
}

// a fixed family of polynomial models with order M used by the structure checks
TvarModel poly_model(int M, double s2 = 1.0) {
  std::vector<std::vector<double>> coeffs;
  for (int m = 1; m <= M; ++m)
    coeffs.push_back({0.3 / m, -0.2 / m, 0.05 * m});
  return TvarModel(M, std::move(coeffs), s2, "poly");
}

double dense_at(const std::vector<double>& d, int n, int i, int j) {
  return d[static_cast<std::size_t>(i) * n + j];
}

}  // namespace

TEST_CASE("build_A layout") {
  SUBCASE("constant AR(1), n = 3") {
    const double c = -0.7;
    const LowerBandMatrix A = build_A(ar1_const(c), 3);
    const std::vector<double> want{1, 0, 0, c, 1, 0, 0, c, 1};
    CHECK(A.dense() == want);  // entries are exact
  }
  SUBCASE("ramp AR(1), n = 4: subdiagonal a_1(t/4) at rows 2..4") {
    const TvarModel m(1, {{0.0, -0.9}}, 1.0);  // a_1(r) = -0.9 r
    const LowerBandMatrix A = build_A(m, 4);
    CHECK(A.at(2, 1) == doctest::Approx(-0.45).epsilon(1e-15));
    CHECK(A.at(3, 2) == doctest::Approx(-0.675).epsilon(1e-15));
    CHECK(A.at(4, 3) == doctest::Approx(-0.9).epsilon(1e-15));
  }
  SUBCASE("unit diagonal and det = 1 exactly") {
    for (int M : {0, 1, 2, 3}) {
      const LowerBandMatrix A = build_A(poly_model(M), 16);
      CHECK(A.det() == 1.0);
      for (int t = 1; t <= 16; ++t) CHECK(A.at(t, t) == 1.0);
    }
  }
  SUBCASE("order clamped by the dimension") {
    const LowerBandMatrix A = build_A(poly_model(5), 3);
    CHECK(A.bandwidth == 2);
  }
}

TEST_CASE("build_phi_inv closed forms") {
  SUBCASE("constant AR(1), n = 3: hand-computed A^T A") {
    const double c = -0.7;
    const SymBandMatrix G = build_phi_inv(ar1_const(c), 3);
    CHECK(G.at(1, 1) == doctest::Approx(1 + c * c).epsilon(1e-15));
    CHECK(G.at(2, 2) == doctest::Approx(1 + c * c).epsilon(1e-15));
    CHECK(G.at(3, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(G.at(1, 2) == doctest::Approx(c).epsilon(1e-15));
    CHECK(G.at(2, 3) == doctest::Approx(c).epsilon(1e-15));
    CHECK(G.at(1, 3) == 0.0);
  }
  SUBCASE("white noise: (1/sigma^2) I") {
    const SymBandMatrix G = build_phi_inv(TvarModel(0, {}, 4.0), 5);
    for (int i = 1; i <= 5; ++i)
      for (int j = 1; j <= 5; ++j)
        CHECK(G.at(i, j) == (i == j ? 0.25 : 0.0));
  }
  SUBCASE("entries beyond M diagonals are exactly zero") {
    const SymBandMatrix G = build_phi_inv(poly_model(2), 10);
    for (int mu = 1; mu <= 10; ++mu)
      for (int nu = 1; nu <= 10; ++nu)
        if (std::abs(mu - nu) > 2) CHECK(G.at(mu, nu) == 0.0);
  }
}

TEST_CASE("entry_phi_inv agrees with the A^T A construction") {
  SUBCASE("hand values at n = 3") {
    const double c = -0.7;
    const TvarModel m = ar1_const(c);
    CHECK(entry_phi_inv(m, 3, 3, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entry_phi_inv(m, 3, 1, 2) == doctest::Approx(c).epsilon(1e-15));
    CHECK(entry_phi_inv(m, 3, 1, 3) == 0.0);
  }
  SUBCASE("symmetry and 1e-12 relative agreement, M in {1,2,3}, n = 64") {
    for (int M : {1, 2, 3}) {
      const TvarModel m = poly_model(M, 1.7);
      const SymBandMatrix G = build_phi_inv(m, 64);
      for (int mu = 1; mu <= 64; ++mu)
        for (int nu = 1; nu <= 64; ++nu) {
          const double closed = entry_phi_inv(m, 64, mu, nu);
          CHECK(closed == entry_phi_inv(m, 64, nu, mu));
          const double built = G.at(mu, nu);
          CHECK(std::abs(closed - built) <=
                1e-12 * std::max(1.0, std::abs(built)));
        }
    }
  }
  SUBCASE("Toeplitz interior for constant coefficients") {
    const TvarModel m(2, {{-0.5}, {0.3}}, 1.0);
    const int n = 32;
    for (int d = 0; d <= 2; ++d) {
      const double ref = entry_phi_inv(m, n, 1, 1 + d);
      for (int i = 1; i + d <= n - 2; ++i)
        CHECK(entry_phi_inv(m, n, i, i + d) ==
              doctest::Approx(ref).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(entry_phi_inv(ar1_const(-0.9), 4, 0, 1), std::domain_error);
  CHECK_THROWS_AS(entry_phi_inv(ar1_const(-0.9), 4, 1, 5), std::domain_error);
}

TEST_CASE("build_phi") {
  SUBCASE("white noise: sigma^2 I") {
    const std::vector<double> phi = build_phi(TvarModel(0, {}, 3.0), 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(dense_at(phi, 4, i, j) ==
              doctest::Approx(i == j ? 3.0 : 0.0).epsilon(1e-15));
  }
  SUBCASE("AR(1), n = 2: hand-inverted 2x2") {
    // A^T A = [[1.81, -0.9], [-0.9, 1]], det 1 -> phi = [[1, .9], [.9, 1.81]]
    const std::vector<double> phi = build_phi(ar1_const(-0.9), 2);
    CHECK(dense_at(phi, 2, 0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(dense_at(phi, 2, 0, 1) == doctest::Approx(0.9).epsilon(1e-13));
    CHECK(dense_at(phi, 2, 1, 0) == doctest::Approx(0.9).epsilon(1e-13));
    CHECK(dense_at(phi, 2, 1, 1) == doctest::Approx(1.81).epsilon(1e-13));
  }
  SUBCASE("phi * phi_inv is the identity to 1e-8") {
    const int n = 16;
    const TvarModel m = poly_model(2, 0.7);
    const std::vector<double> phi = build_phi(m, n);
    const std::vector<double> pinv = build_phi_inv(m, n).dense();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
          s += dense_at(phi, n, i, k) * dense_at(pinv, n, k, j);
        worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-8);
  }
  SUBCASE("trace_phi matches the dense diagonal") {
    const TvarModel m = poly_model(3, 2.1);
    const int n = 32;
    const std::vector<double> phi = build_phi(m, n);
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += dense_at(phi, n, i, i);
    CHECK(trace_phi(m, n) == doctest::Approx(tr).epsilon(1e-12));
  }
}

TEST_CASE("triangular solves invert A") {
  const TvarModel m = poly_model(2, 1.0);
  const int n = 12;
  const LowerBandMatrix A = build_A(m, n);
  const std::vector<double> dense = A.dense();
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = std::sin(i + 1.0);
  std::vector<double> b = x;
  solve_lower(A, b);  // b = A^{-1} x
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += dense_at(dense, n, i, j) * b[j];
    CHECK(s == doctest::Approx(x[i]).epsilon(1e-12));
  }
  b = x;
  solve_lower_transposed(A, b);  // b = A^{-T} x
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += dense_at(dense, n, i, j) * b[i];
    CHECK(s == doctest::Approx(x[j]).epsilon(1e-12));
  }
}

TEST_CASE("band and CSV exports") {
  const TvarModel m = ar1_const(-0.5, 2.0);
  SUBCASE("symmetric band file carries n, M, sigma^2") {
    const SymBandMatrix G = build_phi_inv(m, 4);
    std::ostringstream os;
    write_band_file(os, G);
    std::istringstream is(os.str());
    int n = 0, M = 0;
    double s2 = 0.0;
    is >> n >> M >> s2;
    CHECK(n == 4);
    CHECK(M == 1);
    CHECK(s2 == doctest::Approx(2.0));
    std::vector<double> diag(4), off(3);
    for (double& v : diag) is >> v;
    for (double& v : off) is >> v;
    CHECK(diag[0] == doctest::Approx(G.at(1, 1)));
    CHECK(off[0] == doctest::Approx(G.at(1, 2)));
  }
  SUBCASE("lower band file round-trips the subdiagonal") {
    const LowerBandMatrix A = build_A(m, 4);
    std::ostringstream os;
    write_band_file(os, A);
    std::istringstream is(os.str());
    int n = 0, M = 0;
    is >> n >> M;
    CHECK(n == 4);
    CHECK(M == 1);
    std::vector<double> diag(4), sub(3);
    for (double& v : diag) is >> v;
    for (double& v : sub) is >> v;
    for (double v : diag) CHECK(v == 1.0);
    CHECK(sub[0] == doctest::Approx(A.at(2, 1)));
  }
  SUBCASE("dense CSV emits n rows of n cells") {
    std::ostringstream os;
    write_dense_csv(os, build_A(m, 3).dense(), 3);
    CHECK(os.str() == "1,0,0\n-0.5,1,0\n0,-0.5,1\n");
  }
}
