#include "geotomo/core/bump.hpp"

#include <cmath>

#include "geotomo/core/quadrature.hpp"

namespace geotomo {

namespace {

double raw_bump(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x)));
}

double compute_normalizer() {
  // 256-point Gauss-Legendre is far beyond what the smooth integrand needs.
  const QuadratureRule q = gauss_legendre(256, 0.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double b = raw_bump(q.nodes[i]);
    s += q.weights[i] * b * b;
  }
  return 1.0 / std::sqrt(s);
}

}  // namespace

double bump_l2_normalizer() {
  static const double c = compute_normalizer();
  return c;
}

double bump(double x) { return bump_l2_normalizer() * raw_bump(x); }

double bump_prime(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double u = x * (1.0 - x);
  const double du = 1.0 - 2.0 * x;
  return bump(x) * du / (u * u);
}

}  // namespace geotomo
