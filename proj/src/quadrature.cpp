#include "tvarrd/quadrature.hpp"

#include <cmath>

namespace tvarrd {

// Newton iteration on the Legendre recurrence; nodes come out symmetric and
// ascending, weights 2 / ((1 - x^2) P_n'(x)^2).
GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order >= 1");
  GaussLegendre gl;
  gl.nodes.assign(order, 0.0);
  gl.weights.assign(order, 0.0);
  const double pi = 3.14159265358979323846;
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) gl.nodes[order / 2] = 0.0;
  return gl;
}

}  // namespace tvarrd
