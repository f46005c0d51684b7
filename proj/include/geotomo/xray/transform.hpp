#pragma once

#include <functional>
#include <memory>

#include "geotomo/fields/operators.hpp"
#include "geotomo/xray/ray_data.hpp"

namespace geotomo {

// Streaming transforms of callable fields (oracles, probe construction).
// Composite trapezoid along the integrator samples of each geodesic.
RayData xray_function(const MetricField& m, const InflowGrid& bundle,
                      const std::function<cd(Vec2)>& f, double step = 1e-3, int workers = 1);
RayData xray_oneform(const MetricField& m, const InflowGrid& bundle,
                     const std::function<CVec2(Vec2)>& a, double step = 1e-3, int workers = 1);

// Line integral of <a(gamma), gamma_dot> from an interior start; the
// direction may have any speed (the transform is parameter-invariant).
cd transport_integral(const MetricField& m, Vec2 x, Vec2 xi,
                      const std::function<CVec2(Vec2)>& a, double step = 1e-3);

// Max residual of the flow derivative identity H u = -<a#, xi> over sample
// points of the bundle interior, centered flow differencing with spacing h.
struct KineticReport {
  double max_residual = 0.0;
  double max_homogeneity_drift = 0.0;  // |u(x, 2 xi) - u(x, xi)|
};
KineticReport kinetic_equation_check(const MetricField& m, const std::function<CVec2(Vec2)>& a,
                                     int n_points = 50, double h = 1e-3, double step = 1e-3,
                                     unsigned seed = 1234);

// Direction-average identity for real covector fields:
// int_{SM} |A|^2 = n int_{SM} <A#, xi>^2 (n = 2), by tensor quadrature.
struct IdentityReport {
  double lhs = 0.0, rhs = 0.0, rel_err = 0.0;
};
IdentityReport sphere_bundle_identity_check(const Operators& ops, const CovectorField& a,
                                            int n_directions = 256);

// Grid-backed transform with cached ray geometry; forward and adjoint are
// exact transposes, which is what the CG inversion relies on.
class RayTransform {
 public:
  RayTransform(const MetricField& m, InflowGrid bundle, std::shared_ptr<const PolarGrid> grid,
               double integrate_step = 1e-3, double quad_step = 4e-3, int workers = 1);

  const InflowGrid& bundle() const { return bundle_; }
  const std::shared_ptr<const PolarGrid>& grid() const { return grid_; }

  RayData forward(const ScalarField& f) const;
  RayData forward(const CovectorField& a) const;
  // accumulate J^T y (unweighted transpose; callers add measure factors)
  void adjoint(const std::vector<cd>& y, ScalarField* out) const;
  void adjoint(const std::vector<cd>& y, CovectorField* out) const;
  // diagonal of J^T diag(w) J over scalar (or stacked covector) unknowns
  void accumulate_normal_diagonal(const std::vector<double>& w, bool oneform,
                                  std::vector<double>* diag) const;

 private:
  struct QuadSample {
    int idx[4];
    double w[4];  // interpolation weights premultiplied by the quad weight
    double v1, v2;
  };
  InflowGrid bundle_;
  std::shared_ptr<const PolarGrid> grid_;
  std::vector<std::vector<QuadSample>> samples_;
};

}  // namespace geotomo
