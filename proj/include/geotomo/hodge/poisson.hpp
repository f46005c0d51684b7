#pragma once

#include <memory>

#include "geotomo/fields/operators.hpp"

namespace geotomo {

// Dirichlet solver for the discrete Laplace-Beltrami system. A direct sparse
// factorization is kept while the interior has at most 128^2 unknowns; above
// that the solve falls back to diagonally preconditioned CG. The
// factorization is immutable after construction and shared across threads.
class PoissonSolver {
 public:
  explicit PoissonSolver(std::shared_ptr<const Operators> ops,
                         int direct_unknown_limit = 128 * 128);

  // Solve Delta phi = f with the given boundary trace (ntheta values; an
  // empty vector means zero). Residual is validated against 1e-8 * |f|.
  ScalarField solve(const ScalarField& f, const std::vector<cd>& boundary = {}) const;

  const Operators& ops() const { return *ops_; }

 private:
  struct Impl;
  std::shared_ptr<const Operators> ops_;
  std::shared_ptr<Impl> impl_;
};

}  // namespace geotomo
