#include "tvarrd/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tvarrd {

namespace {

double poly_eval(const std::vector<double>& c, double r) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + c[i];
  return acc;
}

void check_r(double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("r must lie in [0, 1]");
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Box-Muller pairs over mt19937_64; u1 in (0,1], u2 in [0,1).
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - unit(eng_());
    const double u2 = unit(eng_());
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * kPi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  static double unit(uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

TvarModel::TvarModel(int order_, std::vector<std::vector<double>> coeffs_,
                     double noise_variance_, std::string name_)
    : order(order_),
      coeffs(std::move(coeffs_)),
      noise_variance(noise_variance_),
      name(std::move(name_)) {
  if (order < 0) throw std::invalid_argument("model order must be >= 0");
  if (static_cast<int>(coeffs.size()) != order)
    throw std::invalid_argument("coeffs must have exactly `order` rows");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
    throw std::invalid_argument("noise_variance must be positive and finite");
  for (const auto& row : coeffs) {
    if (row.empty())
      throw std::invalid_argument("each coefficient polynomial needs at least "
                                  "one coefficient");
    for (double c : row)
      if (!std::isfinite(c))
        throw std::invalid_argument("coefficients must be finite");
  }
}

double eval_coeff(const TvarModel& model, int m, double r) {
  if (m < 0) throw std::domain_error("coefficient index must be >= 0");
  check_r(r);
  if (m == 0) return 1.0;
  if (m > model.order) return 0.0;
  return poly_eval(model.coeffs[m - 1], r);
}

double eval_g(const TvarModel& model, double r, double omega) {
  check_r(r);
  if (!(omega >= -kPi && omega <= kPi))
    throw std::domain_error("omega must lie in [-pi, pi]");
  double re = 1.0;
  double im = 0.0;
  for (int m = 1; m <= model.order; ++m) {
    const double a = poly_eval(model.coeffs[m - 1], r);
    re += a * std::cos(m * omega);
    im -= a * std::sin(m * omega);
  }
  return (re * re + im * im) / model.noise_variance;
}

double eval_g_bound(const TvarModel& model, double r) {
  check_r(r);
  double s = 1.0;
  for (int m = 1; m <= model.order; ++m)
    s += std::abs(poly_eval(model.coeffs[m - 1], r));
  return s * s / model.noise_variance;
}

SpectrumGrid sample_spectrum(const TvarModel& model, int nr, int nw) {
  if (nr < 2 || nw < 2)
    throw std::invalid_argument("sample_spectrum needs nr >= 2 and nw >= 2");
  SpectrumGrid grid;
  grid.r_nodes.resize(nr);
  grid.omega_nodes.resize(nw);
  for (int i = 0; i < nr; ++i)
    grid.r_nodes[i] = static_cast<double>(i) / (nr - 1);
  for (int j = 0; j < nw; ++j)
    grid.omega_nodes[j] = -kPi + 2.0 * kPi * j / (nw - 1);
  grid.omega_nodes.front() = -kPi;
  grid.omega_nodes.back() = kPi;
  grid.values.resize(static_cast<std::size_t>(nr) * nw);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nw; ++j) {
      const double v = eval_g(model, grid.r_nodes[i], grid.omega_nodes[j]);
      grid.values[static_cast<std::size_t>(i) * nw + j] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  grid.g_min = lo;
  grid.g_max = hi;
  return grid;
}

ValidationReport validate(const TvarModel& model, double g_floor, int nr,
                          int nw) {
  if (!(g_floor >= 0.0))
    throw std::domain_error("g_floor must be >= 0");
  const SpectrumGrid grid = sample_spectrum(model, nr, nw);
  ValidationReport rep;
  rep.inf_g = grid.g_min;
  rep.sup_g = grid.g_max;
  rep.g_floor = g_floor;
  rep.sup_bound = 0.0;
  for (double r : grid.r_nodes)
    rep.sup_bound = std::max(rep.sup_bound, eval_g_bound(model, r));
  rep.pass = grid.g_min >= g_floor;
  rep.message = rep.pass
                    ? "inf g above floor; asymptotic formulas admissible"
                    : "inf g below floor: 1/g is unbounded, the asymptotic "
                      "distortion integral blows up (finite-n still works)";
  return rep;
}

std::vector<double> simulate_path(const TvarModel& model, int n,
                                  std::span<const double> innovations) {
  if (n < 1) throw std::invalid_argument("path length must be >= 1");
  if (static_cast<int>(innovations.size()) != n)
    throw std::invalid_argument("innovations size must equal n");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    const double r = static_cast<double>(i + 1) / n;
    double v = innovations[i];
    const int mmax = std::min(model.order, i);
    for (int m = 1; m <= mmax; ++m)
      v -= poly_eval(model.coeffs[m - 1], r) * x[i - m];
    x[i] = v;
  }
  return x;
}

SamplePaths simulate(const TvarModel& model, int n, int num_paths,
                     uint64_t seed) {
  if (n < 1 || num_paths < 1)
    throw std::invalid_argument("simulate needs n >= 1 and num_paths >= 1");
  SamplePaths out;
  out.n = n;
  out.num_paths = num_paths;
  out.seed = seed;
  out.paths.resize(static_cast<std::size_t>(num_paths) * n);
  const double sigma = std::sqrt(model.noise_variance);
  std::vector<double> z(n);
  for (int p = 0; p < num_paths; ++p) {
    GaussianStream gauss(splitmix64(seed ^ splitmix64(p + 1)));
    for (int i = 0; i < n; ++i) z[i] = sigma * gauss.next();
    const std::vector<double> x = simulate_path(model, n, z);
    std::copy(x.begin(), x.end(),
              out.paths.begin() + static_cast<std::size_t>(p) * n);
  }
  return out;
}

}  // namespace tvarrd
