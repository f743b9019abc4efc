#include "tvarrd/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace tvarrd {

namespace {

void check_index(int n, int i, const char* what) {
  if (i < 1 || i > n) throw std::domain_error(std::string(what) + " out of range");
}

void append_g17(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

double LowerBandMatrix::at(int row, int col) const {
  check_index(n, row, "row");
  check_index(n, col, "col");
  const int m = row - col;
  if (m < 0 || m > bandwidth) return 0.0;
  return bands[static_cast<std::size_t>(m) * n + (row - 1)];
}

std::vector<double> LowerBandMatrix::dense() const {
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int m = 0; m <= bandwidth; ++m)
    for (int t = m + 1; t <= n; ++t)
      out[static_cast<std::size_t>(t - 1) * n + (t - 1 - m)] =
          bands[static_cast<std::size_t>(m) * n + (t - 1)];
  return out;
}

double SymBandMatrix::at(int mu, int nu) const {
  check_index(n, mu, "mu");
  check_index(n, nu, "nu");
  const int d = std::abs(mu - nu);
  if (d > bandwidth) return 0.0;
  return bands[static_cast<std::size_t>(d) * n + (std::min(mu, nu) - 1)];
}

std::vector<double> SymBandMatrix::dense() const {
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int d = 0; d <= bandwidth; ++d)
    for (int i = 0; i < n - d; ++i) {
      const double v = bands[static_cast<std::size_t>(d) * n + i];
      out[static_cast<std::size_t>(i) * n + (i + d)] = v;
      out[static_cast<std::size_t>(i + d) * n + i] = v;
    }
  return out;
}

LowerBandMatrix build_A(const TvarModel& model, int n) {
  if (n < 1) throw std::invalid_argument("build_A needs n >= 1");
  LowerBandMatrix A;
  A.n = n;
  A.bandwidth = std::min(model.order, n - 1);
  A.bands.assign(static_cast<std::size_t>(A.bandwidth + 1) * n, 0.0);
  for (int m = 0; m <= A.bandwidth; ++m)
    for (int t = m + 1; t <= n; ++t)
      A.bands[static_cast<std::size_t>(m) * n + (t - 1)] =
          eval_coeff(model, m, static_cast<double>(t) / n);
  return A;
}

SymBandMatrix build_phi_inv(const TvarModel& model, int n) {
  const LowerBandMatrix A = build_A(model, n);
  const int B = A.bandwidth;
  SymBandMatrix G;
  G.n = n;
  G.bandwidth = B;
  G.scale = 1.0 / model.noise_variance;
  G.bands.assign(static_cast<std::size_t>(B + 1) * n, 0.0);
  // entry(mu, mu+d) = sum_t A(t, mu) A(t, mu+d) over the overlap of the two
  // column supports, t in [mu+d, min(mu+B, n)].
  for (int d = 0; d <= B; ++d) {
    for (int mu = 1; mu + d <= n; ++mu) {
      const int t_lo = mu + d;
      const int t_hi = std::min(mu + B, n);
      double s = 0.0;
      for (int t = t_lo; t <= t_hi; ++t) {
        const double left = A.bands[static_cast<std::size_t>(t - mu) * n + (t - 1)];
        const double right =
            A.bands[static_cast<std::size_t>(t - mu - d) * n + (t - 1)];
        s += left * right;
      }
      G.bands[static_cast<std::size_t>(d) * n + (mu - 1)] = s * G.scale;
    }
  }
  return G;
}

double entry_phi_inv(const TvarModel& model, int n, int mu, int nu) {
  if (n < 1) throw std::invalid_argument("entry_phi_inv needs n >= 1");
  check_index(n, mu, "mu");
  check_index(n, nu, "nu");
  const int d = std::abs(mu - nu);
  const int mx = std::max(mu, nu);
  double s = 0.0;
  for (int m = 0; m + mx <= n; ++m) {
    if (m > model.order) break;  // a_m = 0 beyond the order
    const double r = static_cast<double>(m + mx) / n;
    s += eval_coeff(model, m, r) * eval_coeff(model, m + d, r);
  }
  return s / model.noise_variance;
}

void solve_lower(const LowerBandMatrix& A, std::vector<double>& x) {
  const int n = A.n;
  const int B = A.bandwidth;
  for (int i = 0; i < n; ++i) {
    double v = x[i];
    const int mmax = std::min(B, i);
    for (int m = 1; m <= mmax; ++m)
      v -= A.bands[static_cast<std::size_t>(m) * n + i] * x[i - m];
    x[i] = v;
  }
}

void solve_lower_transposed(const LowerBandMatrix& A, std::vector<double>& x) {
  const int n = A.n;
  const int B = A.bandwidth;
  for (int i = n - 1; i >= 0; --i) {
    double v = x[i];
    const int mmax = std::min(B, n - 1 - i);
    for (int m = 1; m <= mmax; ++m)
      v -= A.bands[static_cast<std::size_t>(m) * n + (i + m)] * x[i + m];
    x[i] = v;
  }
}

std::vector<double> build_phi(const TvarModel& model, int n) {
  const LowerBandMatrix A = build_A(model, n);
  std::vector<double> phi(static_cast<std::size_t>(n) * n);
  std::vector<double> col(n);
  // phi e_j = sigma^2 A^{-1} (A^{-T} e_j): back substitution, then forward.
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    solve_lower_transposed(A, col);
    solve_lower(A, col);
    for (int i = 0; i < n; ++i)
      phi[static_cast<std::size_t>(i) * n + j] = model.noise_variance * col[i];
  }
  return phi;
}

double trace_phi(const TvarModel& model, int n) {
  const LowerBandMatrix A = build_A(model, n);
  const int B = A.bandwidth;
  std::vector<double> w(n);
  double frob2 = 0.0;
  // ||A^{-1}||_F^2 column by column; column j of A^{-1} vanishes above j.
  for (int j = 0; j < n; ++j) {
    w[j] = 1.0;
    frob2 += 1.0;
    for (int i = j + 1; i < n; ++i) {
      double v = 0.0;
      const int mmax = std::min(B, i - j);
      for (int m = 1; m <= mmax; ++m)
        v -= A.bands[static_cast<std::size_t>(m) * n + i] * w[i - m];
      w[i] = v;
      frob2 += v * v;
    }
  }
  return model.noise_variance * frob2;
}

void write_dense_csv(std::ostream& os, const std::vector<double>& dense,
                     int n) {
  std::string line;
  for (int i = 0; i < n; ++i) {
    line.clear();
    for (int j = 0; j < n; ++j) {
      if (j) line += ',';
      append_g17(line, dense[static_cast<std::size_t>(i) * n + j]);
    }
    line += '\n';
    os << line;
  }
}

namespace {

// One line per diagonal; diagonal d holds n - d values.  `offset` is where
// the first stored value of a diagonal sits inside its band row: 0 for the
// symmetric layout (indexed by the smaller coordinate), d for the lower
// triangular layout (indexed by the row).
void write_band_rows(std::ostream& os, const std::vector<double>& bands, int n,
                     int bandwidth, bool offset_by_diagonal) {
  std::string line;
  for (int d = 0; d <= bandwidth; ++d) {
    line.clear();
    const int start = offset_by_diagonal ? d : 0;
    for (int i = start; i < start + (n - d); ++i) {
      if (i != start) line += ' ';
      append_g17(line, bands[static_cast<std::size_t>(d) * n + i]);
    }
    line += '\n';
    os << line;
  }
}

}  // namespace

void write_band_file(std::ostream& os, const SymBandMatrix& m) {
  std::string head;
  head += std::to_string(m.n);
  head += ' ';
  head += std::to_string(m.bandwidth);
  head += ' ';
  append_g17(head, 1.0 / m.scale);
  head += '\n';
  os << head;
  write_band_rows(os, m.bands, m.n, m.bandwidth, false);
}

void write_band_file(std::ostream& os, const LowerBandMatrix& m) {
  os << m.n << ' ' << m.bandwidth << '\n';
  write_band_rows(os, m.bands, m.n, m.bandwidth, true);
}

}  // namespace tvarrd
