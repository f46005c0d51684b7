#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "geotomo/fields/field_io.hpp"
#include "geotomo/fields/operators.hpp"

using namespace geotomo;

namespace {

std::shared_ptr<PolarGrid> grid(int nr = 48, int nt = 96, double R = 1.0) {
  return std::make_shared<PolarGrid>(nr, nt, R);
}

double max_abs(const std::vector<cd>& v) {
  double m = 0.0;
  for (const cd& z : v) m = std::max(m, std::abs(z));
  return m;
}

// max over nodes strictly inside (skip a margin of rings at the boundary)
double max_abs_interior(const PolarGrid& g, const std::vector<cd>& v, int skip_rings) {
  double m = 0.0;
  for (int j = 0; j <= g.nr() - skip_rings; ++j)
    for (int k = 0; k < g.ntheta(); ++k)
      m = std::max(m, std::abs(v[static_cast<std::size_t>(g.index(j, k))]));
  return m;
}

}  // namespace

TEST_CASE("derivative matrices are 4th order on smooth data") {
  MetricField m = MetricField::euclidean();
  auto interior_error = [&](int nr, int nt) {
    auto g = std::make_shared<PolarGrid>(nr, nt, 1.0);
    Operators ops(m, g);
    ScalarField u = sample_scalar(g, [](Vec2 x) { return cd{std::sin(2.0 * x.x) * x.y, 0.0}; });
    CovectorField du = ops.exterior_d(u);
    double worst = 0.0;
    for (int j = 0; j <= nr - 2; ++j)
      for (int k = 0; k < nt; ++k) {
        const Vec2 x = g->point(j, k);
        const std::size_t id = static_cast<std::size_t>(g->index(j, k));
        worst = std::max(worst, std::abs(du.c1[id] - cd{2.0 * std::cos(2.0 * x.x) * x.y, 0.0}));
        worst = std::max(worst, std::abs(du.c2[id] - cd{std::sin(2.0 * x.x), 0.0}));
      }
    return worst;
  };
  const double e1 = interior_error(24, 48);
  const double e2 = interior_error(48, 96);
  CHECK(e2 <= 1.5e-4);
  CHECK(e1 / e2 >= 12.0);  // 4th-order decay under 2x refinement
}

TEST_CASE("musical isomorphisms invert each other") {
  auto g = grid(24, 48);
  MetricField m = MetricField::conformal_linear(0.6);
  Operators ops(m, g);
  CovectorField a = sample_covector(g, [](Vec2 x) {
    return CVec2{cd{x.y, 0.2}, cd{std::cos(x.x), -0.1}};
  });
  CovectorField back = ops.flat(ops.sharp(a));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.c1.size(); ++i) {
    worst = std::max(worst, std::abs(back.c1[i] - a.c1[i]));
    worst = std::max(worst, std::abs(back.c2[i] - a.c2[i]));
  }
  CHECK(worst <= 1e-13);

  // <A,A> computed on covectors equals <A#,A#> on vectors pointwise
  ScalarField p1 = ops.covector_pairing(a, a);
  VectorField as = ops.sharp(a);
  ScalarField p2 = ops.vector_pairing(as, as);
  double dmax = 0.0;
  for (std::size_t i = 0; i < p1.v.size(); ++i) dmax = std::max(dmax, std::abs(p1.v[i] - p2.v[i]));
  CHECK(dmax <= 1e-12);
}

TEST_CASE("gradient of |x|^2 under a conformal metric") {
  auto g = grid();
  MetricField m = MetricField::conformal_linear(1.0);
  Operators ops(m, g);
  ScalarField u = sample_scalar(g, [](Vec2 x) { return cd{x.norm2(), 0.0}; });
  VectorField gu = ops.gradient(u);
  double worst = 0.0;
  for (int j = 0; j <= g->nr(); ++j)
    for (int k = 0; k < g->ntheta(); ++k) {
      const Vec2 x = g->point(j, k);
      const double e = std::exp(-2.0 * x.x);
      const std::size_t id = static_cast<std::size_t>(g->index(j, k));
      worst = std::max(worst, std::abs(gu.c1[id] - cd{2.0 * e * x.x, 0.0}));
      worst = std::max(worst, std::abs(gu.c2[id] - cd{2.0 * e * x.y, 0.0}));
    }
  CHECK(worst <= 1e-5);

  ScalarField cst = sample_scalar(g, [](Vec2) { return cd{3.7, -0.4}; });
  CHECK(max_abs(ops.gradient(cst).c1) <= 1e-11);
  CHECK(max_abs(ops.gradient(cst).c2) <= 1e-11);
}

TEST_CASE("divergence basics and the rotation field") {
  auto g = grid();
  MetricField m = MetricField::euclidean();
  Operators ops(m, g);
  VectorField c = sample_vector(g, [](Vec2) { return CVec2{1.3, -0.8}; });
  CHECK(max_abs(ops.divergence(c).v) <= 1e-11);
  VectorField rot = sample_vector(g, [](Vec2 x) { return CVec2{-x.y, x.x}; });
  CHECK(max_abs(ops.divergence(rot).v) <= 1e-11);
}

TEST_CASE("coderivative equals divergence of the raised field bit for bit") {
  auto g = grid(20, 40);
  MetricField m = MetricField::gaussian_bump(0.2, 0.7, {0.1, -0.2});
  Operators ops(m, g);
  CovectorField a = sample_covector(g, [](Vec2 x) {
    return CVec2{cd{std::sin(x.y), 0.3 * x.x}, cd{x.x * x.y, -0.2}};
  });
  ScalarField d1 = ops.coderivative(a);
  ScalarField d2 = ops.divergence(ops.sharp(a));
  for (std::size_t i = 0; i < d1.v.size(); ++i) CHECK(d1.v[i] == d2.v[i]);
}

TEST_CASE("adjointness of coderivative and exterior derivative") {
  auto g = grid(128, 256);
  MetricField m = MetricField::conformal_linear(0.5);
  Operators ops(m, g);
  // v vanishes on the boundary
  CovectorField a = sample_covector(g, [](Vec2 x) {
    return CVec2{cd{std::exp(-2.0 * x.norm2()), 0.0}, cd{x.x, 0.5 * x.y}};
  });
  ScalarField v = sample_scalar(g, [](Vec2 x) {
    return cd{(1.0 - x.norm2()) * std::exp(-(x - Vec2{0.2, 0.1}).norm2() / 0.3), 0.0};
  });
  const cd lhs = ops.inner(ops.coderivative(a), v);
  const cd rhs = -ops.inner(a, ops.exterior_d(v));
  const double scale = ops.l2_norm(a) * ops.l2_norm(v);
  CHECK(std::abs(lhs - rhs) <= 1e-4 * scale);
}

TEST_CASE("laplacian of a quadratic and the green identity") {
  auto g = grid(64, 128);
  MetricField m = MetricField::euclidean();
  Operators ops(m, g);
  ScalarField u = sample_scalar(g, [](Vec2 x) { return cd{x.norm2(), 0.0}; });
  ScalarField lu = ops.laplacian(u);
  double worst = 0.0;
  for (int j = 0; j <= g->nr() - 4; ++j)
    for (int k = 0; k < g->ntheta(); ++k)
      worst = std::max(worst, std::abs(lu.v[static_cast<std::size_t>(g->index(j, k))] - 4.0));
  CHECK(worst <= 1e-6);

  ScalarField cst = sample_scalar(g, [](Vec2) { return cd{2.0, 1.0}; });
  CHECK(max_abs(ops.laplacian(cst).v) <= 5e-9);

  // int (Delta w) u = -int <grad w, grad u> + oint (d_nu w) u
  ScalarField w = sample_scalar(g, [](Vec2 x) { return cd{std::sin(x.x) * x.y, 0.0}; });
  ScalarField uu = sample_scalar(g, [](Vec2 x) { return cd{std::cos(0.8 * x.y) + x.x, 0.0}; });
  const cd left = ops.inner(ops.laplacian(w), uu);
  VectorField gw = ops.gradient(w);
  VectorField gu = ops.gradient(uu);
  ScalarField pair = ops.vector_pairing(gw, gu);  // real fields: conjugation immaterial
  const cd mid = ops.integrate(pair);
  std::vector<cd> dnw = ops.normal_derivative(w);
  std::vector<cd> tu = ops.boundary_trace(uu);
  for (std::size_t i = 0; i < dnw.size(); ++i) dnw[i] *= tu[i];
  const cd bdry = ops.boundary_integral(dnw);
  CHECK(std::abs(left + mid - bdry) <= 1e-3);
}

TEST_CASE("divergence theorem converges at second order or better") {
  MetricField m = MetricField::gaussian_bump(0.25, 0.8, {0.0, 0.1});
  auto field = [](Vec2 x) { return CVec2{cd{std::sin(x.y) + x.x * x.x, 0.0}, cd{x.x, 0.0}}; };
  auto residual = [&](int nr, int nt) {
    auto g = std::make_shared<PolarGrid>(nr, nt, 1.0);
    Operators ops(m, g);
    VectorField X = sample_vector(g, field);
    const cd lhs = ops.integrate(ops.divergence(X));
    std::vector<cd> flux(static_cast<std::size_t>(nt));
    for (int k = 0; k < nt; ++k) {
      const std::size_t id = static_cast<std::size_t>(g->index(nr, k));
      const Vec2 y = g->point(nr, k);
      const Vec2 nu = m.outward_normal(y);
      const Mat2 gm = m.g(y);
      const CVec2 xv{X.c1[id], X.c2[id]};
      flux[static_cast<std::size_t>(k)] = metric_pair(gm, xv, CVec2{nu.x, nu.y});
    }
    return std::abs(lhs - ops.boundary_integral(flux));
  };
  const double r1 = residual(24, 48);
  const double r2 = residual(48, 96);
  CHECK(r2 <= std::max(r1 / 3.5, 1e-12));  // observed order >= 2 (or at rounding level)
}

TEST_CASE("pure gauge covariance of the magnetic laplacian") {
  auto g = grid(64, 128);
  MetricField m = MetricField::euclidean();
  Operators ops(m, g);
  const cd I{0.0, 1.0};
  AnalyticScalar phi = analytic_dirichlet_bump(0.5, 0.8, {0.1, 0.0});
  CovectorField A = sample_covector(g, [](Vec2 x) {
    return CVec2{cd{0.0, 0.3 * std::sin(x.y)}, cd{0.0, 0.2 * x.x}};
  });
  ScalarField u = sample_scalar(g, [](Vec2 x) { return cd{std::cos(x.x), 0.4 * x.y}; });

  // A -> A + d phi carries solutions as u -> e^{-i phi} u:
  // Delta_{A + d phi} (e^{-i phi} u) = e^{-i phi} Delta_A u
  CovectorField Ashift = A;
  CovectorField dphi = sample_covector(g, [&](Vec2 x) { return phi.grad(x); });
  axpy(1.0, dphi, &Ashift);
  ScalarField ushift = u;
  for (std::size_t i = 0; i < ushift.v.size(); ++i) {
    const cd ph = std::exp(-I * phi.f(g->point(static_cast<int>(i))));
    ushift.v[i] = ph * u.v[i];
  }
  ScalarField lhs = ops.magnetic_laplacian(Ashift, ushift);
  ScalarField rhs = ops.magnetic_laplacian(A, u);
  // interior rows only: the boundary ring holds trace stencils, not dynamics
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < g->interior_size(); ++i) {
    const std::size_t id = static_cast<std::size_t>(i);
    const cd ph = std::exp(-I * phi.f(g->point(i)));
    worst = std::max(worst, std::abs(lhs.v[id] - ph * rhs.v[id]));
    scale = std::max(scale, std::abs(rhs.v[id]));
  }
  CHECK(worst <= 1e-3 * scale);

  // A = 0 reduces to the plain laplacian
  CovectorField zero(g);
  ScalarField l0 = ops.magnetic_laplacian(zero, u);
  ScalarField l1 = ops.laplacian(u);
  double dmax = 0.0;
  for (std::size_t i = 0; i < l0.v.size(); ++i) dmax = std::max(dmax, std::abs(l0.v[i] - l1.v[i]));
  CHECK(dmax == 0.0);
}

TEST_CASE("gauge-reduced operator matches the advection form pointwise") {
  auto g = grid(48, 96);
  MetricField m = MetricField::conformal_linear(0.3);
  Operators ops(m, g);
  const cd I{0.0, 1.0};
  VectorField X = sample_vector(g, [](Vec2 x) {
    const double e = std::exp(-x.norm2() / 0.4);
    return CVec2{cd{0.4 * e, 0.0}, cd{-0.3 * e * x.x, 0.0}};
  });
  ScalarField u = sample_scalar(g, [](Vec2 x) { return cd{std::sin(1.3 * x.x) + x.y * x.y, 0.0}; });

  // A = (i/2) X^flat, q = |X|^2/4 - div X / 2
  CovectorField A = ops.flat(X);
  scale(0.5 * I, &A);
  ScalarField q = ops.vector_pairing(X, X);
  ScalarField divX = ops.divergence(X);
  for (std::size_t i = 0; i < q.v.size(); ++i) q.v[i] = 0.25 * q.v[i] - 0.5 * divX.v[i];

  // -Delta_A u + q u  vs  -Delta u + <X, grad u>
  ScalarField mag = ops.magnetic_laplacian(A, u);
  ScalarField lap = ops.laplacian(u);
  VectorField gu = ops.gradient(u);
  ScalarField xgu = ops.vector_pairing(X, gu);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    const cd lhs = -mag.v[i] + q.v[i] * u.v[i];
    const cd rhs = -lap.v[i] + xgu.v[i];
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("boundary normal and normal derivative") {
  auto g = grid(48, 96);
  MetricField m = MetricField::euclidean();
  Operators ops(m, g);
  for (int k = 0; k < g->ntheta(); k += 7) {
    const Vec2 nu = ops.boundary_normal(k);
    const Vec2 y = g->point(g->nr(), k);
    CHECK(std::abs(nu.x - y.x) <= 1e-12);
    CHECK(std::abs(nu.y - y.y) <= 1e-12);
  }
  ScalarField u = sample_scalar(g, [](Vec2 x) { return cd{x.norm2(), 0.0}; });
  std::vector<cd> dn = ops.normal_derivative(u);
  for (const cd& z : dn) CHECK(std::abs(z - 2.0) <= 1e-5);

  MetricField mb = MetricField::gaussian_bump(0.3, 0.6, {0.2, 0.1});
  Operators opsb(mb, g);
  for (int k = 0; k < g->ntheta(); k += 5) {
    const Vec2 nu = opsb.boundary_normal(k);
    const Vec2 y = g->point(g->nr(), k);
    CHECK(std::abs(mb.inner(y, nu, nu) - 1.0) <= 1e-10);
  }
}

TEST_CASE("delta compose d equals the laplacian on the same stencils") {
  auto g = grid(32, 64);
  MetricField m = MetricField::gaussian_bump(0.15, 0.9, {-0.1, 0.2});
  Operators ops(m, g);
  ScalarField u = sample_scalar(g, [](Vec2 x) { return cd{(1.0 - x.norm2()) * x.x, 0.0}; });
  ScalarField a = ops.coderivative(ops.exterior_d(u));
  ScalarField b = ops.laplacian(u);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) worst = std::max(worst, std::abs(a.v[i] - b.v[i]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("field round trip through the binary container") {
  auto g = grid(12, 24);
  CovectorField a = sample_covector(g, [](Vec2 x) {
    return CVec2{cd{x.x, -x.y}, cd{0.5, x.norm2()}};
  });
  const std::string path = std::filesystem::temp_directory_path() / "geotomo_field_test.fld";
  write_field(path, a, "euclidean", "cafe1234");
  std::string metric, fp;
  CovectorField b = read_covector_field(path, &metric, &fp);
  CHECK(metric == "euclidean");
  CHECK(fp == "cafe1234");
  REQUIRE(b.c1.size() == a.c1.size());
  for (std::size_t i = 0; i < a.c1.size(); ++i) {
    CHECK(a.c1[i] == b.c1[i]);
    CHECK(a.c2[i] == b.c2[i]);
  }
  std::filesystem::remove(path);
}
