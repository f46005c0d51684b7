#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "geotomo/core/error.hpp"
#include "geotomo/core/vec.hpp"

namespace geotomo {

using SpMatD = Eigen::SparseMatrix<double>;
using SpMatC = Eigen::SparseMatrix<cd>;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;

// Fornberg finite-difference weights: derivative of order m at point z from
// the given nodes. Returns one weight per node.
std::vector<double> fd_weights(double z, const std::vector<double>& nodes, int m);

// Polar tensor grid on the disk of the given radius. Rings sit at
// r_j = (j + 1/2) dr for j = 0..nr with (nr + 1/2) dr = radius, so the
// boundary is the exact coordinate ring j = nr and no node sits on the pole.
// Radial lines continue through the pole onto the opposite angle, which
// keeps interior stencils centered; ntheta must be even for that pairing.
class PolarGrid {
 public:
  PolarGrid(int nr, int ntheta, double radius);

  int nr() const { return nr_; }
  int ntheta() const { return ntheta_; }
  double radius() const { return radius_; }
  double dr() const { return dr_; }
  double dtheta() const { return dtheta_; }

  int n_rings() const { return nr_ + 1; }
  int size() const { return n_rings() * ntheta_; }
  int interior_size() const { return nr_ * ntheta_; }

  int wrap(int k) const {
    k %= ntheta_;
    return k < 0 ? k + ntheta_ : k;
  }
  int index(int j, int k) const { return j * ntheta_ + wrap(k); }
  int ring_of(int idx) const { return idx / ntheta_; }
  bool is_boundary_ring(int j) const { return j == nr_; }

  double r(int j) const { return (j + 0.5) * dr_; }
  double theta(int k) const { return k * dtheta_; }
  Vec2 point(int j, int k) const {
    const double rr = r(j), th = theta(k);
    return {rr * std::cos(th), rr * std::sin(th)};
  }
  Vec2 point(int idx) const { return point(idx / ntheta_, idx % ntheta_); }

  // width of the radial cell owned by ring j (half cell at the boundary)
  double radial_weight(int j) const { return j < nr_ ? dr_ : 0.5 * dr_; }

  // First-derivative matrices in the polar coordinates; through-pole
  // centered stencils inside, boundary-biased rows near/at j = nr.
  const SpMatD& deriv_r() const { return dr_mat_; }
  const SpMatD& deriv_theta() const { return dt_mat_; }

  struct InterpStencil {
    int idx[4] = {0, 0, 0, 0};
    double w[4] = {0, 0, 0, 0};
    bool inside = false;
  };
  // Bilinear interpolation stencil at a chart point; inside == false when
  // the point lies beyond the boundary ring (fields are extended by zero).
  InterpStencil interpolate(Vec2 x) const;

  std::vector<int> boundary_nodes() const;

 private:
  void build_derivative_matrices();

  int nr_, ntheta_;
  double radius_, dr_, dtheta_;
  SpMatD dr_mat_, dt_mat_;
};

// Real sparse operator applied to a complex nodal vector.
void apply_real_op(const SpMatD& op, const std::vector<cd>& in, std::vector<cd>* out);

}  // namespace geotomo
