#include "geotomo/fields/polar_grid.hpp"

#include <cmath>

namespace geotomo {

std::vector<double> fd_weights(double z, const std::vector<double>& nodes, int m) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][static_cast<std::size_t>(k)] =
              c1 * (k * c[i - 1][static_cast<std::size_t>(k - 1)] - c5 * c[i - 1][static_cast<std::size_t>(k)]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][static_cast<std::size_t>(k)] =
            (c4 * c[j][static_cast<std::size_t>(k)] - k * c[j][static_cast<std::size_t>(k - 1)]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][static_cast<std::size_t>(m)];
  return w;
}

PolarGrid::PolarGrid(int nr, int ntheta, double radius)
    : nr_(nr), ntheta_(ntheta), radius_(radius) {
  if (nr < 6 || ntheta < 8 || ntheta % 2 != 0)
    fail(ErrorKind::Config, "polar grid needs nr >= 6 and even ntheta >= 8");
  dr_ = radius / (nr + 0.5);
  dtheta_ = 2.0 * M_PI / ntheta;
  build_derivative_matrices();
}

void PolarGrid::build_derivative_matrices() {
  using T = Eigen::Triplet<double>;
  std::vector<T> tr, tt;
  const int half = ntheta_ / 2;

  // theta: 5-point centered, periodic, same row pattern on every ring
  const std::vector<double> tnodes{-2.0 * dtheta_, -dtheta_, 0.0, dtheta_, 2.0 * dtheta_};
  const std::vector<double> tw = fd_weights(0.0, tnodes, 1);

  for (int j = 0; j <= nr_; ++j) {
    // radial stencil: centered where it fits (negative rings fold through
    // the pole), boundary-biased rows at the outer edge
    const int lo = (j <= nr_ - 2) ? j - 2 : j - 3;
    const int count = (j == nr_) ? 4 : 5;
    std::vector<double> nodes(static_cast<std::size_t>(count));
    for (int a = 0; a < count; ++a) nodes[static_cast<std::size_t>(a)] = ((lo + a) + 0.5) * dr_;
    const std::vector<double> w = fd_weights(r(j), nodes, 1);
    for (int k = 0; k < ntheta_; ++k) {
      const int row = index(j, k);
      for (int a = 0; a < count; ++a) {
        const int ring = lo + a;
        const int col = ring >= 0 ? index(ring, k) : index(-1 - ring, k + half);
        tr.emplace_back(row, col, w[static_cast<std::size_t>(a)]);
      }
      for (int a = 0; a < 5; ++a)
        tt.emplace_back(row, index(j, k - 2 + a), tw[static_cast<std::size_t>(a)]);
    }
  }
  dr_mat_.resize(size(), size());
  dr_mat_.setFromTriplets(tr.begin(), tr.end());
  dr_mat_.makeCompressed();
  dt_mat_.resize(size(), size());
  dt_mat_.setFromTriplets(tt.begin(), tt.end());
  dt_mat_.makeCompressed();
}

PolarGrid::InterpStencil PolarGrid::interpolate(Vec2 x) const {
  InterpStencil s;
  const double rr = x.norm();
  if (rr > radius_ * (1.0 + 1e-12)) return s;
  double th = std::atan2(x.y, x.x);
  if (th < 0.0) th += 2.0 * M_PI;
  const double kf = th / dtheta_;
  const int k0 = static_cast<int>(std::floor(kf));
  const double bt = kf - k0;

  const double jf = rr / dr_ - 0.5;
  int j0 = static_cast<int>(std::floor(jf));
  double a = jf - j0;
  if (j0 >= nr_) {
    j0 = nr_ - 1;
    a = jf - j0;
  }
  const int half = ntheta_ / 2;
  auto node = [&](int j, int k) { return j >= 0 ? index(j, k) : index(-1 - j, k + half); };
  s.idx[0] = node(j0, k0);
  s.idx[1] = node(j0, k0 + 1);
  s.idx[2] = node(j0 + 1, k0);
  s.idx[3] = node(j0 + 1, k0 + 1);
  s.w[0] = (1.0 - a) * (1.0 - bt);
  s.w[1] = (1.0 - a) * bt;
  s.w[2] = a * (1.0 - bt);
  s.w[3] = a * bt;
  s.inside = true;
  return s;
}

std::vector<int> PolarGrid::boundary_nodes() const {
  std::vector<int> out(static_cast<std::size_t>(ntheta_));
  for (int k = 0; k < ntheta_; ++k) out[static_cast<std::size_t>(k)] = index(nr_, k);
  return out;
}

void apply_real_op(const SpMatD& op, const std::vector<cd>& in, std::vector<cd>* out) {
  const Eigen::Index n = op.rows();
  out->assign(static_cast<std::size_t>(n), cd{0.0, 0.0});
  VecD re(n), im(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    re[i] = in[static_cast<std::size_t>(i)].real();
    im[i] = in[static_cast<std::size_t>(i)].imag();
  }
  const VecD ore = op * re, oim = op * im;
  for (Eigen::Index i = 0; i < n; ++i) (*out)[static_cast<std::size_t>(i)] = cd{ore[i], oim[i]};
}

}  // namespace geotomo
