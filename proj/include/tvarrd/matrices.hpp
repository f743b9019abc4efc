#pragma once

#include <iosfwd>
#include <vector>

#include "tvarrd/model.hpp"

namespace tvarrd {

// Paper-style 1-based indices (mu, nu) on the public surface; band storage is
// 0-based internally.  For both band types, diagonal d of length n - d is laid
// out at bands[d * n .. d * n + (n - d - 1)].

// Unit-lower-triangular banded matrix of the TVAR recursion: row t carries
// a_m(t/n) at column t - m for m = 0..min(M, t-1).  det = 1 by construction.
struct LowerBandMatrix {
  int n = 0;
  int bandwidth = 0;          // min(M, n-1)
  std::vector<double> bands;  // bands[m * n + (t-1)] = A(t, t-m), 1-based t

  // A(row, col); exact 0 outside the band.  1-based indices.
  double at(int row, int col) const;
  // Triangular determinant: the product of the stored diagonal, which is
  // exactly 1 entry by entry.
  double det() const {
    double d = 1.0;
    for (int t = 0; t < n; ++t) d *= bands[t];
    return d;
  }
  std::vector<double> dense() const;  // row-major n x n
};

// Symmetric banded matrix holding (1/sigma^2) A^T A; `scale` records the
// applied 1/sigma^2 factor.
struct SymBandMatrix {
  int n = 0;
  int bandwidth = 0;
  double scale = 1.0;         // 1/sigma_z^2, already applied to entries
  std::vector<double> bands;  // bands[d * n + i] = entry(i+1, i+1+d)

  // entry(mu, nu); exact 0 for |mu - nu| > bandwidth.  Throws
  // std::domain_error for indices outside 1..n.
  double at(int mu, int nu) const;
  std::vector<double> dense() const;
};

LowerBandMatrix build_A(const TvarModel& model, int n);

// (1/sigma^2) A^T A accumulated from the band storage of A.
SymBandMatrix build_phi_inv(const TvarModel& model, int n);

// Closed-form band entry
//   (1/sigma^2) sum_{m=0}^{n-max(mu,nu)} a_m((m+max)/n) a_{m+|mu-nu|}((m+max)/n),
// an independent route to the same value as build_phi_inv.
double entry_phi_inv(const TvarModel& model, int n, int mu, int nu);

// Dense covariance sigma^2 (A^T A)^{-1}, column by column through a forward
// and a back substitution against the unit-triangular A (never a general
// inverse).  Row-major n x n; intended for n up to a few thousand.
std::vector<double> build_phi(const TvarModel& model, int n);

// trace of the covariance as sigma^2 ||A^{-1}||_F^2, accumulated one forward
// solve per column; O(n) memory.
double trace_phi(const TvarModel& model, int n);

// In-place solves against A (unit diagonal): A x = b and A^T x = b.
void solve_lower(const LowerBandMatrix& A, std::vector<double>& x);
void solve_lower_transposed(const LowerBandMatrix& A, std::vector<double>& x);

// Dense CSV, one row per line.
void write_dense_csv(std::ostream& os, const std::vector<double>& dense, int n);

// Band-format text files: header line, then one line per diagonal.
void write_band_file(std::ostream& os, const SymBandMatrix& m);   // "n M sigma2"
void write_band_file(std::ostream& os, const LowerBandMatrix& m); // "n M"

}  // namespace tvarrd
