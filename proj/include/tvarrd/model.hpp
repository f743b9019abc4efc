#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tvarrd {

inline constexpr double kPi = 3.14159265358979323846;

// Floor on the grid infimum of g(r,w) below which the asymptotic machinery
// refuses a model: the distortion integral of 1/g is unbounded as g -> 0.
// Finite-n computations remain well defined for such models.
inline constexpr double kDefaultGFloor = 1e-9;

// Gaussian time-varying autoregressive (TVAR) source of order M:
//
//   x_t = -sum_{m=1..M} a_m(t/n) x_{t-m} + z_t,    x_t = 0 for t <= 0,
//
// with i.i.d. innovations z_t ~ N(0, noise_variance) and coefficient
// trajectories a_m(r) given as polynomials in normalized time r = t/n.
// a_0 = 1 identically and is never stored.
//
// The inverse-spectrum surface attached to the model is
//
//   g(r, w) = (1/noise_variance) * |1 + sum_{m=1..M} a_m(r) e^{-i m w}|^2,
//
// nonnegative and even in w for real coefficients.
struct TvarModel {
  int order = 0;                            // M >= 0
  std::vector<std::vector<double>> coeffs;  // coeffs[m-1]: a_m(r), ascending degree
  double noise_variance = 1.0;              // sigma_z^2 > 0
  std::string name;

  // Throws std::invalid_argument unless noise_variance > 0, coeffs has
  // exactly `order` nonempty rows, and every coefficient is finite.
  TvarModel(int order_, std::vector<std::vector<double>> coeffs_,
            double noise_variance_, std::string name_ = "");
};

// a_m(r) for 0 <= m, 0 <= r <= 1.  Returns exactly 1 for m = 0 and exactly 0
// for m > order.  Throws std::domain_error for negative m or r outside [0,1].
double eval_coeff(const TvarModel& model, int m, double r);

// g(r, w); domain r in [0,1], w in [-pi, pi].
double eval_g(const TvarModel& model, double r, double omega);

// Pointwise upper bound (1/sigma^2) (sum_{m=0..M} |a_m(r)|)^2 >= g(r, .).
double eval_g_bound(const TvarModel& model, double r);

// Tensor-grid tabulation of g with cached extrema.
struct SpectrumGrid {
  std::vector<double> r_nodes;      // ascending in [0, 1]
  std::vector<double> omega_nodes;  // ascending in [-pi, pi]
  std::vector<double> values;       // row-major [ir * omega_nodes.size() + iw]
  double g_min = 0.0;
  double g_max = 0.0;

  double at(std::size_t ir, std::size_t iw) const {
    return values[ir * omega_nodes.size() + iw];
  }
};

// Samples g on the nr x nw grid r = linspace(0,1), w = linspace(-pi,pi),
// endpoints included.  Requires nr >= 2, nw >= 2.
SpectrumGrid sample_spectrum(const TvarModel& model, int nr, int nw);

// Outcome of the admissibility check for the asymptotic path.  A failure is
// reported here, never thrown.
struct ValidationReport {
  bool pass = false;
  double inf_g = 0.0;     // grid estimate of the essential infimum of g
  double sup_g = 0.0;     // grid estimate of the essential supremum of g
  double sup_bound = 0.0; // max over r of eval_g_bound
  double g_floor = 0.0;
  std::string message;
};

// Grid check that inf g stays above g_floor.  Grid defaults chosen so that
// trigonometric polynomials of moderate order are resolved.
ValidationReport validate(const TvarModel& model, double g_floor = kDefaultGFloor,
                          int nr = 257, int nw = 513);

struct SamplePaths {
  int n = 0;
  int num_paths = 0;
  std::vector<double> paths;  // row-major num_paths x n
  std::uint64_t seed = 0;

  double at(int path, int t) const {
    return paths[static_cast<std::size_t>(path) * n + t];
  }
};

// Runs the difference equation for one path from the zero initial state with
// caller-supplied innovations (innovations.size() == n).
std::vector<double> simulate_path(const TvarModel& model, int n,
                                  std::span<const double> innovations);

// Draws num_paths independent realizations of length n.  Innovations for path
// p come from std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(p+1)),
// mapped to N(0, sigma^2) by the basic Box-Muller transform; the partition by
// path index keeps results identical however paths are scheduled.
SamplePaths simulate(const TvarModel& model, int n, int num_paths,
                     std::uint64_t seed);

}  // namespace tvarrd
