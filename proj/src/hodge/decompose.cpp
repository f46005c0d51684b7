#include "geotomo/hodge/decompose.hpp"

namespace geotomo {

Decomposition solenoidal_decompose(const PoissonSolver& poisson, const CovectorField& a) {
  const Operators& ops = poisson.ops();
  Decomposition out;
  const ScalarField da = ops.coderivative(a);
  out.potential = poisson.solve(da);  // Delta phi = delta A, phi|boundary = 0
  const CovectorField dphi = ops.exterior_d(out.potential);
  out.solenoidal = a;
  axpy(cd{-1.0, 0.0}, dphi, &out.solenoidal);

  // diagnostics
  const ScalarField das = ops.coderivative(out.solenoidal);
  out.coderivative_norm = ops.l2_norm(das);
  for (int k = 0; k < ops.grid()->ntheta(); ++k) {
    const std::size_t id = static_cast<std::size_t>(ops.grid()->index(ops.grid()->nr(), k));
    out.boundary_potential = std::max(out.boundary_potential, std::abs(out.potential.v[id]));
  }
  double split = 0.0;
  for (std::size_t i = 0; i < a.c1.size(); ++i) {
    split = std::max(split, std::abs(a.c1[i] - out.solenoidal.c1[i] - dphi.c1[i]));
    split = std::max(split, std::abs(a.c2[i] - out.solenoidal.c2[i] - dphi.c2[i]));
  }
  out.split_residual = split;
  return out;
}

}  // namespace geotomo
