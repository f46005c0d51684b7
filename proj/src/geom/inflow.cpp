#include "geotomo/geom/inflow.hpp"

#include <cmath>

#include "geotomo/core/quadrature.hpp"

namespace geotomo {

double InflowGrid::measure() const {
  double s = 0.0;
  for (const auto& r : rays) s += r.weight * r.mu;
  return s;
}

InflowGrid sample_inflow_bundle(const MetricField& m, int n_boundary, int n_direction) {
  if (n_boundary <= 0 || n_direction <= 0)
    fail(ErrorKind::Domain, "inflow bundle needs positive sample counts");
  InflowGrid grid;
  grid.n_boundary = n_boundary;
  grid.n_direction = n_direction;
  grid.rays.reserve(static_cast<std::size_t>(n_boundary * n_direction));
  const QuadratureRule qa = gauss_legendre(n_direction, -M_PI / 2.0, M_PI / 2.0);
  grid.alpha_nodes = qa.nodes;
  const double ds = 2.0 * M_PI / n_boundary;
  for (int i = 0; i < n_boundary; ++i) {
    const double s = (i + 0.5) * ds;
    Vec2 y, inward, tangent;
    m.boundary_frame(s, &y, &inward, &tangent);
    const double ws = m.boundary_length_element(s) * ds;
    for (int a = 0; a < n_direction; ++a) {
      const double alpha = qa.nodes[static_cast<std::size_t>(a)];
      InflowRay r;
      r.s = s;
      r.alpha = alpha;
      r.y = y;
      r.xi = inward * std::cos(alpha) + tangent * std::sin(alpha);
      r.mu = std::cos(alpha);
      r.weight = ws * qa.weights[static_cast<std::size_t>(a)];
      grid.rays.push_back(r);
    }
  }
  return grid;
}

InflowGrid sample_inflow_uniform(const MetricField& m, int n_boundary, int n_direction,
                                 double aperture_margin) {
  if (n_boundary <= 0 || n_direction <= 0)
    fail(ErrorKind::Domain, "inflow bundle needs positive sample counts");
  InflowGrid grid;
  grid.n_boundary = n_boundary;
  grid.n_direction = n_direction;
  grid.rays.reserve(static_cast<std::size_t>(n_boundary * n_direction));
  const double span = M_PI - 2.0 * aperture_margin;
  const double da = span / n_direction;
  grid.alpha_nodes.resize(static_cast<std::size_t>(n_direction));
  for (int a = 0; a < n_direction; ++a)
    grid.alpha_nodes[static_cast<std::size_t>(a)] = -span / 2.0 + (a + 0.5) * da;
  const double ds = 2.0 * M_PI / n_boundary;
  for (int i = 0; i < n_boundary; ++i) {
    const double s = (i + 0.5) * ds;
    Vec2 y, inward, tangent;
    m.boundary_frame(s, &y, &inward, &tangent);
    const double ws = m.boundary_length_element(s) * ds;
    for (int a = 0; a < n_direction; ++a) {
      const double alpha = grid.alpha_nodes[static_cast<std::size_t>(a)];
      InflowRay r;
      r.s = s;
      r.alpha = alpha;
      r.y = y;
      r.xi = inward * std::cos(alpha) + tangent * std::sin(alpha);
      r.mu = std::cos(alpha);
      r.weight = ws * da;
      grid.rays.push_back(r);
    }
  }
  return grid;
}

double boundary_length(const MetricField& m, int n) {
  double L = 0.0;
  const double ds = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i) L += m.boundary_length_element((i + 0.5) * ds) * ds;
  return L;
}

double diameter_estimate(const MetricField& m, int n_boundary, int n_direction, double step) {
  const InflowGrid g = sample_inflow_bundle(m, n_boundary, n_direction);
  ShootOptions opt;
  opt.step = step;
  double d = 0.0;
  for (const auto& r : g.rays) d = std::max(d, trace_geodesic(m, r.y, r.xi, opt, nullptr));
  return d;
}

KPlusReport k_plus(const MetricField& m, int n_boundary, int n_direction, double step) {
  const InflowGrid g = sample_inflow_bundle(m, n_boundary, n_direction);
  ShootOptions opt;
  opt.step = step;
  KPlusReport rep;
  rep.n_boundary = n_boundary;
  rep.n_direction = n_direction;
  rep.step = step;
  for (const auto& r : g.rays) {
    double acc = 0.0, prev_t = 0.0, prev_f = 0.0;
    bool first = true;
    trace_geodesic(m, r.y, r.xi, opt, [&](const GeodesicSample& s) {
      const double f = s.t * std::max(0.0, m.gaussian_curvature(s.x));
      if (!first) acc += 0.5 * (f + prev_f) * (s.t - prev_t);
      prev_t = s.t;
      prev_f = f;
      first = false;
    });
    rep.value = std::max(rep.value, acc);
  }
  return rep;
}

}  // namespace geotomo
