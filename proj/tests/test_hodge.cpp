#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "geotomo/hodge/decompose.hpp"

using namespace geotomo;

namespace {

struct Setup {
  std::shared_ptr<PolarGrid> grid;
  MetricField metric;
  std::shared_ptr<Operators> ops;
  std::shared_ptr<PoissonSolver> poisson;

  Setup(int nr, int nt, MetricField m) : grid(std::make_shared<PolarGrid>(nr, nt, 1.0)), metric(std::move(m)) {
    ops = std::make_shared<Operators>(metric, grid);
    poisson = std::make_shared<PoissonSolver>(ops);
  }
};

}  // namespace

TEST_CASE("zero data gives the zero solution") {
  Setup s(24, 48, MetricField::euclidean());
  ScalarField f(s.grid);
  ScalarField phi = s.poisson->solve(f);
  for (const cd& z : phi.v) CHECK(std::abs(z) <= 1e-14);
}

TEST_CASE("constant source on the euclidean disk") {
  Setup s(64, 128, MetricField::euclidean());
  ScalarField f = sample_scalar(s.grid, [](Vec2) { return cd{4.0, 0.0}; });
  ScalarField phi = s.poisson->solve(f);
  // Delta phi = 4, phi|r=1 = 0  ->  phi = |x|^2 - 1
  double worst = 0.0;
  for (int i = 0; i < s.grid->size(); ++i)
    worst = std::max(worst, std::abs(phi.v[static_cast<std::size_t>(i)] -
                                     cd{s.grid->point(i).norm2() - 1.0, 0.0}));
  CHECK(worst <= 1e-5);
}

TEST_CASE("manufactured solution on a curved metric") {
  Setup s(64, 128, MetricField::gaussian_bump(0.25, 0.7, {0.15, -0.1}));
  AnalyticScalar star = analytic_dirichlet_bump(1.0, 0.55, {-0.2, 0.25});
  // analytic Laplace-Beltrami of the manufactured solution
  ScalarField f = sample_scalar(s.grid, [&](Vec2 x) {
    const Mat2 gi = s.metric.g_inv(x);
    const Christoffel c = s.metric.christoffel_raw(x);
    const std::array<cd, 3> h = star.hess(x);
    const CVec2 gr = star.grad(x);
    auto term = [&](int i, int j, cd hij) {
      const double gij = (i == 0 && j == 0) ? gi.a11 : (i == 1 && j == 1) ? gi.a22 : gi.a12;
      const cd gam = c.g[0].quad({i == 0 ? 1.0 : 0.0, i == 0 ? 0.0 : 1.0},
                                 {j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0}) * gr.x +
                     c.g[1].quad({i == 0 ? 1.0 : 0.0, i == 0 ? 0.0 : 1.0},
                                 {j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0}) * gr.y;
      return gij * (hij - gam);
    };
    return term(0, 0, h[0]) + 2.0 * term(0, 1, h[1]) + term(1, 1, h[2]);
  });
  ScalarField phi = s.poisson->solve(f);
  double worst = 0.0;
  for (int i = 0; i < s.grid->size(); ++i)
    worst = std::max(worst, std::abs(phi.v[static_cast<std::size_t>(i)] - star.f(s.grid->point(i))));
  CHECK(worst <= 1e-5);
}

TEST_CASE("pure potential field decomposes to zero solenoidal part") {
  Setup s(48, 96, MetricField::conformal_linear(0.4));
  AnalyticScalar phi_star = analytic_dirichlet_bump(1.0, 0.6, {0.1, 0.2});
  CovectorField a = sample_covector(s.grid, [&](Vec2 x) { return phi_star.grad(x); });
  Decomposition d = solenoidal_decompose(*s.poisson, a);
  CHECK(s.ops->l2_norm(d.solenoidal) <= 1e-4 * s.ops->l2_norm(a));
  CHECK(d.boundary_potential <= 1e-10);
  double phi_err = 0.0;
  for (int i = 0; i < s.grid->size(); ++i)
    phi_err = std::max(phi_err, std::abs(d.potential.v[static_cast<std::size_t>(i)] -
                                         phi_star.f(s.grid->point(i))));
  CHECK(phi_err <= 1e-4);
}

TEST_CASE("rotation field is already solenoidal") {
  Setup s(48, 96, MetricField::euclidean());
  CovectorField a = sample_covector(s.grid, [](Vec2 x) { return CVec2{-x.y, x.x}; });
  Decomposition d = solenoidal_decompose(*s.poisson, a);
  double pot = 0.0;
  for (const cd& z : d.potential.v) pot = std::max(pot, std::abs(z));
  CHECK(pot <= 1e-9);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.c1.size(); ++i) {
    diff = std::max(diff, std::abs(a.c1[i] - d.solenoidal.c1[i]));
    diff = std::max(diff, std::abs(a.c2[i] - d.solenoidal.c2[i]));
  }
  CHECK(diff <= 1e-9);
}

TEST_CASE("random smooth field: exact split, small coderivative, idempotent") {
  Setup s(64, 128, MetricField::gaussian_bump(0.2, 0.8, {0.0, 0.1}));
  CovectorField a = sample_covector(s.grid, [](Vec2 x) {
    return CVec2{cd{std::sin(2.0 * x.y) + 0.3 * x.x, 0.2 * x.x * x.y},
                 cd{std::cos(1.5 * x.x), -0.1 + 0.4 * x.y}};
  });
  Decomposition d = solenoidal_decompose(*s.poisson, a);
  CHECK(d.split_residual <= 1e-12);
  CHECK(d.coderivative_norm <= 2e-2 * s.ops->l2_norm(a));

  Decomposition d2 = solenoidal_decompose(*s.poisson, d.solenoidal);
  double change = 0.0;
  for (std::size_t i = 0; i < a.c1.size(); ++i) {
    change = std::max(change, std::abs(d2.solenoidal.c1[i] - d.solenoidal.c1[i]));
    change = std::max(change, std::abs(d2.solenoidal.c2[i] - d.solenoidal.c2[i]));
  }
  CHECK(change <= 1e-6);

  // uniqueness: shifting by a vanishing-trace gradient leaves A_s unchanged
  AnalyticScalar chi = analytic_dirichlet_bump(0.7, 0.5, {-0.15, 0.05});
  ScalarField chi_grid = sample_scalar(s.grid, [&](Vec2 x) { return chi.f(x); });
  CovectorField dchi = s.ops->exterior_d(chi_grid);
  CovectorField shifted = a;
  axpy(1.0, dchi, &shifted);
  Decomposition d3 = solenoidal_decompose(*s.poisson, shifted);
  double drift = 0.0;
  for (std::size_t i = 0; i < a.c1.size(); ++i) {
    drift = std::max(drift, std::abs(d3.solenoidal.c1[i] - d.solenoidal.c1[i]));
    drift = std::max(drift, std::abs(d3.solenoidal.c2[i] - d.solenoidal.c2[i]));
  }
  CHECK(drift <= 1e-6);
}

TEST_CASE("conjugate-gradient fallback above the direct-solve limit") {
  auto grid = std::make_shared<PolarGrid>(32, 64, 1.0);
  MetricField m = MetricField::euclidean();
  auto ops = std::make_shared<Operators>(m, grid);
  PoissonSolver cg_solver(ops, /*direct_unknown_limit=*/8);
  ScalarField f = sample_scalar(grid, [](Vec2) { return cd{4.0, 0.0}; });
  ScalarField phi = cg_solver.solve(f);
  double worst = 0.0;
  for (int i = 0; i < grid->size(); ++i)
    worst = std::max(worst, std::abs(phi.v[static_cast<std::size_t>(i)] -
                                     cd{grid->point(i).norm2() - 1.0, 0.0}));
  CHECK(worst <= 1e-4);
}

TEST_CASE("stability constants stay bounded under refinement") {
  auto field = [](Vec2 x) {
    return CVec2{cd{std::sin(1.5 * x.y), 0.0}, cd{x.x * x.x, 0.0}};
  };
  double prev_ratio = 0.0;
  for (int n : {24, 48, 80}) {
    Setup s(n, 2 * n, MetricField::conformal_linear(0.3));
    CovectorField a = sample_covector(s.grid, field);
    Decomposition d = solenoidal_decompose(*s.poisson, a);
    const double ratio = s.ops->l2_norm(d.solenoidal) / s.ops->l2_norm(a);
    CHECK(ratio <= 1.5);  // |A_s| <= C |A| with a grid-independent constant
    if (prev_ratio != 0.0) CHECK(std::abs(ratio - prev_ratio) <= 0.05);
    prev_ratio = ratio;
  }
}
