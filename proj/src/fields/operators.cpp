#include "geotomo/fields/operators.hpp"

#include <cmath>

#include "geotomo/simd/kernels.hpp"

namespace geotomo {

Operators::Operators(const MetricField& metric, std::shared_ptr<const PolarGrid> grid)
    : metric_(metric), grid_(std::move(grid)) {
  const int n = grid_->size();
  const int nt = grid_->ntheta();
  g11_.resize(n);
  g12_.resize(n);
  g22_.resize(n);
  gi11_.resize(n);
  gi12_.resize(n);
  gi22_.resize(n);
  sqrtg_.resize(n);
  vol_.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 x = grid_->point(i);
    const Mat2 g = metric_.g(x);
    const Mat2 gi = g.inverse();
    g11_[i] = g.a11;
    g12_[i] = g.a12;
    g22_[i] = g.a22;
    gi11_[i] = gi.a11;
    gi12_[i] = gi.a12;
    gi22_[i] = gi.a22;
    sqrtg_[i] = std::sqrt(g.det());
    const int j = grid_->ring_of(i);
    vol_[i] = sqrtg_[i] * grid_->r(j) * grid_->radial_weight(j) * grid_->dtheta();
  }
  // chart derivatives through the polar chain rule:
  //   d/dx1 = cos(t) d/dr - sin(t)/r d/dt,  d/dx2 = sin(t) d/dr + cos(t)/r d/dt
  std::vector<double> c1(n), c2(n), s1(n), s2(n);
  for (int i = 0; i < n; ++i) {
    const int j = grid_->ring_of(i);
    const double th = grid_->theta(i % nt);
    const double r = grid_->r(j);
    c1[i] = std::cos(th);
    s1[i] = -std::sin(th) / r;
    c2[i] = std::sin(th);
    s2[i] = std::cos(th) / r;
  }
  dx1_ = scalar_diag(c1) * grid_->deriv_r() + scalar_diag(s1) * grid_->deriv_theta();
  dx2_ = scalar_diag(c2) * grid_->deriv_r() + scalar_diag(s2) * grid_->deriv_theta();
  dx1_.makeCompressed();
  dx2_.makeCompressed();

  bnormal_.resize(nt);
  bweight_.resize(nt);
  for (int k = 0; k < nt; ++k) {
    const double th = grid_->theta(k);
    const Vec2 y{grid_->radius() * std::cos(th), grid_->radius() * std::sin(th)};
    bnormal_[k] = metric_.outward_normal(y);
    bweight_[k] = metric_.boundary_length_element(th) * grid_->dtheta();
  }
}

SpMatD Operators::scalar_diag(const std::vector<double>& d) const {
  const int n = grid_->size();
  SpMatD m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (int i = 0; i < n; ++i) m.insert(i, i) = d[static_cast<std::size_t>(i)];
  m.makeCompressed();
  return m;
}

SpMatC Operators::scalar_diag_c(const std::vector<cd>& d) const {
  const int n = grid_->size();
  SpMatC m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (int i = 0; i < n; ++i) m.insert(i, i) = d[static_cast<std::size_t>(i)];
  m.makeCompressed();
  return m;
}

namespace {
CovectorField conjugated(const CovectorField& a) {
  CovectorField out(a.grid);
  for (std::size_t i = 0; i < a.c1.size(); ++i) {
    out.c1[i] = std::conj(a.c1[i]);
    out.c2[i] = std::conj(a.c2[i]);
  }
  return out;
}
}  // namespace

VectorField Operators::sharp(const CovectorField& a) const {
  VectorField out(grid_);
  const std::size_t n = a.c1.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.c1[i] = gi11_[i] * a.c1[i] + gi12_[i] * a.c2[i];
    out.c2[i] = gi12_[i] * a.c1[i] + gi22_[i] * a.c2[i];
  }
  return out;
}

CovectorField Operators::flat(const VectorField& x) const {
  CovectorField out(grid_);
  const std::size_t n = x.c1.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.c1[i] = g11_[i] * x.c1[i] + g12_[i] * x.c2[i];
    out.c2[i] = g12_[i] * x.c1[i] + g22_[i] * x.c2[i];
  }
  return out;
}

CovectorField Operators::exterior_d(const ScalarField& u) const {
  CovectorField out(grid_);
  apply_real_op(dx1_, u.v, &out.c1);
  apply_real_op(dx2_, u.v, &out.c2);
  return out;
}

VectorField Operators::gradient(const ScalarField& u) const { return sharp(exterior_d(u)); }

ScalarField Operators::divergence(const VectorField& x) const {
  const std::size_t n = x.c1.size();
  std::vector<cd> f1(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) {
    f1[i] = sqrtg_[i] * x.c1[i];
    f2[i] = sqrtg_[i] * x.c2[i];
  }
  std::vector<cd> d1, d2;
  apply_real_op(dx1_, f1, &d1);
  apply_real_op(dx2_, f2, &d2);
  ScalarField out(grid_);
  for (std::size_t i = 0; i < n; ++i) out.v[i] = (d1[i] + d2[i]) / sqrtg_[i];
  return out;
}

ScalarField Operators::coderivative(const CovectorField& a) const { return divergence(sharp(a)); }

ScalarField Operators::laplacian(const ScalarField& u) const { return divergence(gradient(u)); }

ScalarField Operators::magnetic_laplacian(const CovectorField& a, const ScalarField& u) const {
  ScalarField out = laplacian(u);
  const VectorField as = sharp(a);
  const CovectorField du = exterior_d(u);
  const ScalarField da = coderivative(a);
  const ScalarField aa = covector_pairing(a, a);
  const std::size_t n = u.v.size();
  const cd I{0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const cd adu = as.c1[i] * du.c1[i] + as.c2[i] * du.c2[i];
    out.v[i] += 2.0 * I * adu + I * da.v[i] * u.v[i] - aa.v[i] * u.v[i];
  }
  return out;
}

ScalarField Operators::covector_pairing(const CovectorField& a, const CovectorField& b) const {
  ScalarField out(grid_);
  const std::size_t n = a.c1.size();
  for (std::size_t i = 0; i < n; ++i)
    out.v[i] = gi11_[i] * a.c1[i] * b.c1[i] + gi12_[i] * (a.c1[i] * b.c2[i] + a.c2[i] * b.c1[i]) +
               gi22_[i] * a.c2[i] * b.c2[i];
  return out;
}

ScalarField Operators::vector_pairing(const VectorField& x, const VectorField& y) const {
  ScalarField out(grid_);
  const std::size_t n = x.c1.size();
  for (std::size_t i = 0; i < n; ++i)
    out.v[i] = g11_[i] * x.c1[i] * y.c1[i] + g12_[i] * (x.c1[i] * y.c2[i] + x.c2[i] * y.c1[i]) +
               g22_[i] * x.c2[i] * y.c2[i];
  return out;
}

std::vector<cd> Operators::normal_derivative(const ScalarField& u) const {
  const CovectorField du = exterior_d(u);
  const int nt = grid_->ntheta();
  std::vector<cd> out(static_cast<std::size_t>(nt));
  for (int k = 0; k < nt; ++k) {
    const int id = grid_->index(grid_->nr(), k);
    const Vec2 nu = bnormal_[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] =
        nu.x * du.c1[static_cast<std::size_t>(id)] + nu.y * du.c2[static_cast<std::size_t>(id)];
  }
  return out;
}

std::vector<cd> Operators::boundary_trace(const ScalarField& u) const {
  const int nt = grid_->ntheta();
  std::vector<cd> out(static_cast<std::size_t>(nt));
  for (int k = 0; k < nt; ++k)
    out[static_cast<std::size_t>(k)] = u.v[static_cast<std::size_t>(grid_->index(grid_->nr(), k))];
  return out;
}

cd Operators::integrate(const ScalarField& u) const {
  return simd::kernels().zwsum(u.v.size(), vol_.data(), u.v.data());
}

cd Operators::inner(const ScalarField& u, const ScalarField& v) const {
  // (u, v) = int u conj(v): zwdotc conjugates its first argument
  return simd::kernels().zwdotc(u.v.size(), vol_.data(), v.v.data(), u.v.data());
}

cd Operators::inner(const CovectorField& a, const CovectorField& b) const {
  const ScalarField p = covector_pairing(a, conjugated(b));
  return simd::kernels().zwsum(p.v.size(), vol_.data(), p.v.data());
}

cd Operators::inner(const VectorField& x, const VectorField& y) const {
  VectorField yc(grid_);
  const std::size_t n = y.c1.size();
  for (std::size_t i = 0; i < n; ++i) {
    yc.c1[i] = std::conj(y.c1[i]);
    yc.c2[i] = std::conj(y.c2[i]);
  }
  const ScalarField p = vector_pairing(x, yc);
  return simd::kernels().zwsum(p.v.size(), vol_.data(), p.v.data());
}

double Operators::l2_norm(const ScalarField& u) const {
  double s = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i) s += vol_[i] * std::norm(u.v[i]);
  return std::sqrt(s);
}

double Operators::l2_norm(const CovectorField& a) const { return std::sqrt(std::abs(inner(a, a))); }

double Operators::l2_norm(const VectorField& x) const { return std::sqrt(std::abs(inner(x, x))); }

cd Operators::boundary_integral(const std::vector<cd>& trace) const {
  return simd::kernels().zwsum(trace.size(), bweight_.data(), trace.data());
}

const SpMatC& Operators::laplacian_matrix() const {
  if (!lap_) {
    // Delta = diag(1/sqrtg) * sum_i Dxi * diag(sqrtg) * (diag(gi_i1) Dx1 + diag(gi_i2) Dx2)
    SpMatD grad1 = scalar_diag(gi11_) * dx1_ + scalar_diag(gi12_) * dx2_;
    SpMatD grad2 = scalar_diag(gi12_) * dx1_ + scalar_diag(gi22_) * dx2_;
    SpMatD sg = scalar_diag(sqrtg_);
    std::vector<double> isg(sqrtg_.size());
    for (std::size_t i = 0; i < isg.size(); ++i) isg[i] = 1.0 / sqrtg_[i];
    SpMatD lap = scalar_diag(isg) * (dx1_ * (sg * grad1) + dx2_ * (sg * grad2));
    lap.makeCompressed();
    lap_ = std::make_shared<SpMatC>(lap.cast<cd>());
  }
  return *lap_;
}

SpMatC Operators::advection_matrix(const VectorField& x) const {
  // i du/dt = (Delta - X.grad) u
  SpMatC xdot = scalar_diag_c(x.c1) * dx1_.cast<cd>() + scalar_diag_c(x.c2) * dx2_.cast<cd>();
  SpMatC out = laplacian_matrix() - xdot;
  out.makeCompressed();
  return out;
}

SpMatC Operators::adjoint_advection_matrix(const VectorField& x) const {
  SpMatC xdot = scalar_diag_c(x.c1) * dx1_.cast<cd>() + scalar_diag_c(x.c2) * dx2_.cast<cd>();
  const ScalarField dv = divergence(x);
  SpMatC out = laplacian_matrix() + xdot + scalar_diag_c(dv.v);
  out.makeCompressed();
  return out;
}

SpMatC Operators::magnetic_matrix(const CovectorField& a, const ScalarField& q) const {
  const VectorField as = sharp(a);
  const ScalarField da = coderivative(a);
  const ScalarField aa = covector_pairing(a, a);
  const cd I{0.0, 1.0};
  SpMatC first = scalar_diag_c(as.c1) * dx1_.cast<cd>() + scalar_diag_c(as.c2) * dx2_.cast<cd>();
  std::vector<cd> zero_order(q.v.size());
  for (std::size_t i = 0; i < zero_order.size(); ++i)
    zero_order[i] = I * da.v[i] - aa.v[i] - q.v[i];
  SpMatC out = laplacian_matrix() + cd{0.0, 2.0} * first + scalar_diag_c(zero_order);
  out.makeCompressed();
  return out;
}

Operators::SplitOp Operators::split(const SpMatC& full) const {
  const int n = grid_->size();
  const int ni = grid_->interior_size();
  const int nt = grid_->ntheta();
  // interior nodes come first in the flat layout (ring-major), boundary last
  SplitOp s;
  s.interior = full.topLeftCorner(ni, ni);
  s.boundary_coupling = full.block(0, ni, ni, nt);
  s.interior.makeCompressed();
  s.boundary_coupling.makeCompressed();
  (void)n;
  return s;
}

void Operators::gather_interior(const std::vector<cd>& full, VecC* interior) const {
  const int ni = grid_->interior_size();
  interior->resize(ni);
  for (int i = 0; i < ni; ++i) (*interior)[i] = full[static_cast<std::size_t>(i)];
}

void Operators::scatter_interior(const VecC& interior, const std::vector<cd>& boundary,
                                 std::vector<cd>* full) const {
  const int ni = grid_->interior_size();
  const int nt = grid_->ntheta();
  full->resize(static_cast<std::size_t>(ni + nt));
  for (int i = 0; i < ni; ++i) (*full)[static_cast<std::size_t>(i)] = interior[i];
  for (int k = 0; k < nt; ++k) (*full)[static_cast<std::size_t>(ni + k)] = boundary[static_cast<std::size_t>(k)];
}

}  // namespace geotomo
