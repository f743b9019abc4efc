#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvarrd {

// Composite Gauss-Legendre panels with uniform doubling refinement and
// Richardson-style stopping: under the h^2 panel-error model of a kinked
// integrand, the finer level's error is |fine - coarse| / 3, and the ladder
// stops once that estimate falls below refine_tol relative to the magnitude
// of the estimated component vector (plus a small absolute slack so exact
// zeros converge).
struct QuadConfig {
  int r_panels = 16;
  int omega_panels = 32;
  int nodes_per_panel = 4;     // Gauss-Legendre order per panel
  double refine_tol = 1e-6;    // relative tolerance between doublings
  int max_refinements = 6;
};

// Nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Requires order >= 1.  Nodes ascending.
GaussLegendre gauss_legendre(int order);

// Raised when the doubling budget runs out; carries the last two estimates of
// every component.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, std::vector<double> previous_,
                  std::vector<double> last_)
      : std::runtime_error(msg),
        previous(std::move(previous_)),
        last(std::move(last_)) {}

  std::vector<double> previous;
  std::vector<double> last;
};

template <std::size_t K>
struct QuadEstimate {
  std::array<double, K> value{};
  std::array<double, K> error{};  // |last - previous| per component
  int refinements = 0;            // doublings applied past the base level
};

namespace detail {

// Neumaier compensated accumulation; fixed evaluation order keeps results
// reproducible to the last bit.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double total() const { return sum + comp; }
};

template <std::size_t K, class F>
std::array<double, K> composite_2d(F&& f, double r0, double r1, int r_panels,
                                   double w0, double w1, int w_panels,
                                   const GaussLegendre& gl) {
  const int q = static_cast<int>(gl.nodes.size());
  const double hr = (r1 - r0) / r_panels;
  const double hw = (w1 - w0) / w_panels;
  std::array<Accumulator, K> acc{};
  for (int ir = 0; ir < r_panels; ++ir) {
    const double ra = r0 + ir * hr;
    for (int a = 0; a < q; ++a) {
      const double r = ra + 0.5 * hr * (gl.nodes[a] + 1.0);
      const double wr = 0.5 * hr * gl.weights[a];
      for (int iw = 0; iw < w_panels; ++iw) {
        const double wa = w0 + iw * hw;
        for (int b = 0; b < q; ++b) {
          const double w = wa + 0.5 * hw * (gl.nodes[b] + 1.0);
          const double ww = 0.5 * hw * gl.weights[b];
          const std::array<double, K> v = f(r, w);
          for (std::size_t c = 0; c < K; ++c) acc[c].add(v[c] * wr * ww);
        }
      }
    }
  }
  std::array<double, K> out{};
  for (std::size_t c = 0; c < K; ++c) out[c] = acc[c].total();
  return out;
}

inline bool component_converged(double prev, double cur, double scale,
                                double tol) {
  return std::abs(cur - prev) / 3.0 <= tol * scale + 1e-12;
}

}  // namespace detail

// Integrates f(r, w) -> array<double, K> over [r0,r1] x [w0,w1].  Throws
// QuadratureError when max_refinements doublings do not reach refine_tol.
template <std::size_t K, class F>
QuadEstimate<K> integrate_2d(F&& f, double r0, double r1, double w0, double w1,
                             const QuadConfig& cfg) {
  if (cfg.r_panels < 1 || cfg.omega_panels < 1 || cfg.nodes_per_panel < 1 ||
      cfg.max_refinements < 1 || !(cfg.refine_tol > 0.0) ||
      !(cfg.refine_tol < 1.0))
    throw std::invalid_argument("integrate_2d: bad quadrature config");
  const GaussLegendre gl = gauss_legendre(cfg.nodes_per_panel);
  std::array<double, K> prev =
      detail::composite_2d<K>(f, r0, r1, cfg.r_panels, w0, w1,
                              cfg.omega_panels, gl);
  for (int lev = 1;; ++lev) {
    const std::array<double, K> cur =
        detail::composite_2d<K>(f, r0, r1, cfg.r_panels << lev, w0, w1,
                                cfg.omega_panels << lev, gl);
    double scale = 0.0;
    for (std::size_t c = 0; c < K; ++c)
      scale = std::max({scale, std::abs(prev[c]), std::abs(cur[c])});
    bool ok = true;
    for (std::size_t c = 0; c < K; ++c)
      ok = ok &&
           detail::component_converged(prev[c], cur[c], scale, cfg.refine_tol);
    if (ok) {
      QuadEstimate<K> est;
      est.value = cur;
      for (std::size_t c = 0; c < K; ++c) est.error[c] = std::abs(cur[c] - prev[c]);
      est.refinements = lev;
      return est;
    }
    if (lev == cfg.max_refinements)
      throw QuadratureError(
          "quadrature did not converge within the refinement budget",
          std::vector<double>(prev.begin(), prev.end()),
          std::vector<double>(cur.begin(), cur.end()));
    prev = cur;
  }
}

}  // namespace tvarrd
