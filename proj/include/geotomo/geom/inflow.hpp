#pragma once

#include <vector>

#include "geotomo/geom/geodesic.hpp"
#include "geotomo/geom/metric.hpp"

namespace geotomo {

// One quadrature point of the inward boundary bundle: boundary angle s,
// aperture angle alpha from the inward normal, g-unit direction xi with
// <xi, nu> < 0, weight mu = |<xi, nu>| = cos(alpha) and the product
// quadrature weight for the surface measure on the bundle.
struct InflowRay {
  double s = 0.0;
  double alpha = 0.0;
  Vec2 y, xi;
  double mu = 1.0;
  double weight = 0.0;
};

struct InflowGrid {
  int n_boundary = 0;
  int n_direction = 0;
  std::vector<InflowRay> rays;  // boundary-major: index = i_s * n_direction + i_a
  std::vector<double> alpha_nodes;

  double measure() const;  // sum weight * mu
};

// Tensor quadrature: midpoint rule in the boundary angle (periodic), Gauss-
// Legendre in the aperture (-pi/2, pi/2). The weights implement integration
// against the inflow measure.
InflowGrid sample_inflow_bundle(const MetricField& m, int n_boundary, int n_direction);

// Same layout with a uniform midpoint aperture grid. Slightly less accurate
// as a quadrature, but the even ray coverage suits tomographic inversion.
InflowGrid sample_inflow_uniform(const MetricField& m, int n_boundary, int n_direction,
                                 double aperture_margin = 0.02);

double boundary_length(const MetricField& m, int n = 512);

// Longest geodesic over a sampled fan; used for trap bounds and probe spans.
double diameter_estimate(const MetricField& m, int n_boundary = 24, int n_direction = 24,
                         double step = 2e-3);

// Curvature smallness functional: sup over the sampled bundle of the
// weighted positive-curvature integral along each geodesic.
struct KPlusReport {
  double value = 0.0;
  int n_boundary = 0, n_direction = 0;
  double step = 0.0;
  bool hypothesis_ok() const { return value < 0.5; }
};
KPlusReport k_plus(const MetricField& m, int n_boundary = 32, int n_direction = 32,
                   double step = 2e-3);

}  // namespace geotomo
