#pragma once

#include "geotomo/hodge/poisson.hpp"

namespace geotomo {

// A = A_s + d phi with delta A_s = 0 (up to the solver tolerance at interior
// nodes) and phi = 0 on the boundary ring. The additive split is exact on
// the grid because A_s is defined as A - d phi.
struct Decomposition {
  CovectorField solenoidal;
  ScalarField potential;
  double split_residual = 0.0;        // max |A - A_s - d phi|
  double coderivative_norm = 0.0;     // |delta A_s|_L2
  double boundary_potential = 0.0;    // max |phi| on the boundary ring
};

Decomposition solenoidal_decompose(const PoissonSolver& poisson, const CovectorField& a);

}  // namespace geotomo
