#include "geotomo/hodge/poisson.hpp"

#include <Eigen/SparseLU>

namespace geotomo {

struct PoissonSolver::Impl {
  Operators::SplitOp split;
  Eigen::SparseLU<SpMatC> lu;
  bool use_direct = true;
  VecD inv_diag;  // Jacobi preconditioner for the CG fallback
};

PoissonSolver::PoissonSolver(std::shared_ptr<const Operators> ops, int direct_unknown_limit)
    : ops_(std::move(ops)) {
  impl_ = std::make_shared<Impl>();
  const SpMatC& lap = ops_->laplacian_matrix();
  impl_->split = ops_->split(lap);
  const int ni = ops_->grid()->interior_size();
  impl_->use_direct = ni <= direct_unknown_limit;
  if (impl_->use_direct) {
    impl_->lu.compute(impl_->split.interior);
    if (impl_->lu.info() != Eigen::Success)
      fail(ErrorKind::Conditioning, "sparse factorization of the Laplacian failed");
  } else {
    // Jacobi preconditioner for CG on the normal equations: squared column
    // norms of the interior operator
    impl_->inv_diag = VecD::Zero(ni);
    const SpMatC& A = impl_->split.interior;
    for (int c = 0; c < A.outerSize(); ++c)
      for (SpMatC::InnerIterator it(A, c); it; ++it)
        impl_->inv_diag[c] += std::norm(it.value());
    for (int i = 0; i < ni; ++i)
      impl_->inv_diag[i] = impl_->inv_diag[i] > 0.0 ? 1.0 / impl_->inv_diag[i] : 1.0;
  }
}

ScalarField PoissonSolver::solve(const ScalarField& f, const std::vector<cd>& boundary) const {
  const auto& grid = ops_->grid();
  const int ni = grid->interior_size();
  const int nt = grid->ntheta();
  std::vector<cd> bvals = boundary;
  if (bvals.empty()) bvals.assign(static_cast<std::size_t>(nt), cd{});
  if (static_cast<int>(bvals.size()) != nt)
    fail(ErrorKind::Domain, "boundary trace length mismatch");

  VecC rhs(ni);
  for (int i = 0; i < ni; ++i) rhs[i] = f.v[static_cast<std::size_t>(i)];
  VecC bvec(nt);
  for (int k = 0; k < nt; ++k) bvec[k] = bvals[static_cast<std::size_t>(k)];
  rhs -= impl_->split.boundary_coupling * bvec;

  VecC sol(ni);
  const double fn = rhs.norm();
  if (impl_->use_direct) {
    sol = impl_->lu.solve(rhs);
    if (impl_->lu.info() != Eigen::Success)
      fail(ErrorKind::Conditioning, "Laplacian solve failed");
  } else {
    // CG on the normal equations (the interior block is boundary-biased and
    // therefore not exactly self-adjoint), diagonal preconditioner
    const SpMatC& A = impl_->split.interior;
    const SpMatC At = SpMatC(A.adjoint());
    VecC x = VecC::Zero(ni);
    VecC r = At * rhs;
    VecC z = impl_->inv_diag.asDiagonal() * r;
    VecC p = z;
    cd rz = r.dot(z);
    const double target = 1e-9 * fn + 1e-13;
    for (int it = 0; it < 50000; ++it) {
      const VecC Ap = At * (A * p);
      const cd alpha = rz / p.dot(Ap);
      x += alpha * p;
      r -= alpha * Ap;
      if (it % 25 == 0 && (A * x - rhs).norm() < target) break;
      z = impl_->inv_diag.asDiagonal() * r;
      const cd rz_new = r.dot(z);
      p = z + (rz_new / rz) * p;
      rz = rz_new;
    }
    sol = x;
  }

  // residual guard (absolute floor covers the zero-source case)
  const double rn = (impl_->split.interior * sol - rhs).norm();
  if (rn > 1e-8 * fn + 1e-12)
    fail(ErrorKind::Conditioning,
         "Poisson residual " + std::to_string(rn) + " exceeds tolerance for |rhs| " + std::to_string(fn));

  ScalarField out(grid);
  ops_->scatter_interior(sol, bvals, &out.v);
  return out;
}

}  // namespace geotomo
