#pragma once

#include "geotomo/hodge/decompose.hpp"
#include "geotomo/xray/transform.hpp"

namespace geotomo {

struct InvertOptions {
  std::vector<double> tau_grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double cg_tol = 1e-8;
  int max_iterations = 2000;
};

struct InvertReport {
  double tau = 0.0;
  int iterations = 0;
  double data_residual = 0.0;     // |J f - d| in the mu-weighted norm
  double solution_norm = 0.0;     // L2(M)
  std::vector<double> sweep_residuals, sweep_norms;
};

// Tikhonov least squares min |J f - d|_mu^2 + tau |f|_L2^2 by CG on the
// normal equations; tau picked on an L-curve sweep (max curvature corner).
ScalarField invert_xray_function(const RayTransform& rt, const Operators& ops, const RayData& d,
                                 const InvertOptions& opt = {}, InvertReport* report = nullptr);

// Same scheme over covector unknowns followed by the solenoidal projection.
CovectorField invert_xray_oneform(const RayTransform& rt, const PoissonSolver& poisson,
                                  const RayData& d, const InvertOptions& opt = {},
                                  InvertReport* report = nullptr);

}  // namespace geotomo
