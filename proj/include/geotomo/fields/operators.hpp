#pragma once

#include <memory>

#include "geotomo/fields/fields.hpp"
#include "geotomo/geom/metric.hpp"

namespace geotomo {

// Differential operators of the metric on one polar grid. Construction
// caches the nodal metric data and the chart-derivative matrices; instances
// are immutable afterwards and safe to share across threads.
class Operators {
 public:
  Operators(const MetricField& metric, std::shared_ptr<const PolarGrid> grid);

  const MetricField& metric() const { return metric_; }
  const std::shared_ptr<const PolarGrid>& grid() const { return grid_; }
  int size() const { return grid_->size(); }

  // d/dx^i as sparse matrices over nodal vectors (chain rule through the
  // polar coordinates).
  const SpMatD& dx(int i) const { return i == 0 ? dx1_ : dx2_; }

  // musical isomorphisms (pointwise)
  VectorField sharp(const CovectorField& a) const;
  CovectorField flat(const VectorField& x) const;

  // exterior derivative, gradient, divergence, coderivative
  CovectorField exterior_d(const ScalarField& u) const;
  VectorField gradient(const ScalarField& u) const;
  ScalarField divergence(const VectorField& x) const;
  ScalarField coderivative(const CovectorField& a) const;  // div of the raised field
  ScalarField laplacian(const ScalarField& u) const;       // div(grad u)
  // Delta_A u = Delta u + 2i <A#, grad u> + i (delta A) u - <A,A> u
  ScalarField magnetic_laplacian(const CovectorField& a, const ScalarField& u) const;

  // pointwise pairings
  ScalarField covector_pairing(const CovectorField& a, const CovectorField& b) const;  // <a,b>, no conj
  ScalarField vector_pairing(const VectorField& x, const VectorField& y) const;

  // boundary machinery (nodes of the outer ring, k = 0..ntheta-1)
  Vec2 boundary_normal(int k) const { return bnormal_[static_cast<std::size_t>(k)]; }
  double boundary_weight(int k) const { return bweight_[static_cast<std::size_t>(k)]; }
  std::vector<cd> normal_derivative(const ScalarField& u) const;
  std::vector<cd> boundary_trace(const ScalarField& u) const;

  // quadrature
  const std::vector<double>& volume_weights() const { return vol_; }
  cd integrate(const ScalarField& u) const;
  cd inner(const ScalarField& u, const ScalarField& v) const;          // (u,v) = int u conj(v)
  cd inner(const CovectorField& a, const CovectorField& b) const;      // int <a, conj b>
  cd inner(const VectorField& x, const VectorField& y) const;
  double l2_norm(const ScalarField& u) const;
  double l2_norm(const CovectorField& a) const;
  double l2_norm(const VectorField& x) const;
  cd boundary_integral(const std::vector<cd>& trace) const;

  // nodal metric caches
  const std::vector<double>& sqrtg() const { return sqrtg_; }
  const std::vector<double>& ginv11() const { return gi11_; }
  const std::vector<double>& ginv12() const { return gi12_; }
  const std::vector<double>& ginv22() const { return gi22_; }
  const std::vector<double>& g11() const { return g11_; }
  const std::vector<double>& g12() const { return g12_; }
  const std::vector<double>& g22() const { return g22_; }

  // assembled operator matrices over the full node vector
  const SpMatC& laplacian_matrix() const;
  SpMatC advection_matrix(const VectorField& x) const;            // Delta - X.grad
  SpMatC adjoint_advection_matrix(const VectorField& x) const;    // Delta + X.grad + div X
  SpMatC magnetic_matrix(const CovectorField& a, const ScalarField& q) const;  // Delta_A - q

  // interior/boundary split of an operator matrix (interior rows)
  struct SplitOp {
    SpMatC interior;          // Ni x Ni
    SpMatC boundary_coupling; // Ni x ntheta
  };
  SplitOp split(const SpMatC& full) const;
  // scatter/gather between full nodal vectors and interior vectors
  void gather_interior(const std::vector<cd>& full, VecC* interior) const;
  void scatter_interior(const VecC& interior, const std::vector<cd>& boundary,
                        std::vector<cd>* full) const;

 private:
  SpMatD scalar_diag(const std::vector<double>& d) const;
  SpMatC scalar_diag_c(const std::vector<cd>& d) const;

  const MetricField& metric_;
  std::shared_ptr<const PolarGrid> grid_;
  SpMatD dx1_, dx2_;
  std::vector<double> g11_, g12_, g22_, gi11_, gi12_, gi22_, sqrtg_, vol_;
  std::vector<Vec2> bnormal_;
  std::vector<double> bweight_;
  mutable std::shared_ptr<SpMatC> lap_;
};

}  // namespace geotomo
