#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "geotomo/geom/geodesic.hpp"
#include "geotomo/geom/inflow.hpp"
#include "geotomo/geom/metric.hpp"

using namespace geotomo;

TEST_CASE("euclidean christoffel symbols vanish") {
  MetricField m = MetricField::euclidean();
  Christoffel c = m.christoffel({0.3, -0.2});
  for (int i = 0; i < 2; ++i) {
    CHECK(c.g[i].a11 == 0.0);
    CHECK(c.g[i].a12 == 0.0);
    CHECK(c.g[i].a22 == 0.0);
  }
}

TEST_CASE("conformal linear christoffel values") {
  // lam = x^1: Gamma^1_{11} = 1, Gamma^1_{22} = -1, Gamma^2_{12} = 1
  MetricField m = MetricField::conformal_linear(1.0);
  Christoffel c = m.christoffel({0.1, 0.4});
  CHECK(c.g[0].a11 == doctest::Approx(1.0));
  CHECK(c.g[0].a22 == doctest::Approx(-1.0));
  CHECK(c.g[1].a12 == doctest::Approx(1.0));
  CHECK(c.g[0].a12 == doctest::Approx(0.0));
  CHECK(c.g[1].a11 == doctest::Approx(0.0));
  CHECK(c.g[1].a22 == doctest::Approx(0.0));
}

TEST_CASE("finite-difference christoffels match analytic on the conformal metric") {
  MetricField ana = MetricField::conformal_linear(0.7);
  MetricField fd = MetricField::from_callable([](Vec2 x) {
    const double e = std::exp(2.0 * 0.7 * x.x);
    return Mat2{e, 0.0, e};
  }, "fd-conformal");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const Vec2 x{u(rng), u(rng)};
    const Christoffel ca = ana.christoffel(x);
    const Christoffel cf = fd.christoffel(x);
    for (int a = 0; a < 2; ++a) {
      worst = std::max(worst, std::abs(ca.g[a].a11 - cf.g[a].a11));
      worst = std::max(worst, std::abs(ca.g[a].a12 - cf.g[a].a12));
      worst = std::max(worst, std::abs(ca.g[a].a22 - cf.g[a].a22));
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("diameter ray exits at the antipode") {
  MetricField m = MetricField::euclidean();
  Geodesic g = shoot_geodesic(m, {1.0, 0.0}, {-1.0, 0.0});
  CHECK(g.exit_time == doctest::Approx(2.0).epsilon(1e-9));
  const Vec2 end = g.samples.back().x;
  CHECK(end.x == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(end.y) <= 1e-9);
}

TEST_CASE("chord length at aperture pi/3") {
  MetricField m = MetricField::euclidean();
  Vec2 y, inward, tangent;
  m.boundary_frame(0.0, &y, &inward, &tangent);
  const double a = M_PI / 3.0;
  const Vec2 xi = inward * std::cos(a) + tangent * std::sin(a);
  CHECK(exit_time(m, y, xi) == doctest::Approx(2.0 * std::cos(a)).epsilon(1e-8));
}

TEST_CASE("outflow rays have zero exit time") {
  MetricField m = MetricField::euclidean();
  CHECK(exit_time(m, {1.0, 0.0}, {1.0, 0.0}) == 0.0);
  CHECK(exit_time(m, {0.0, 1.0}, {0.3, 0.954}) == 0.0);
}

TEST_CASE("unit speed is conserved along conformal geodesics") {
  MetricField m = MetricField::gaussian_bump(0.3, 0.7, {0.2, -0.1});
  Vec2 y, inward, tangent;
  m.boundary_frame(1.1, &y, &inward, &tangent);
  const Vec2 xi = inward * std::cos(0.4) + tangent * std::sin(0.4);
  Geodesic g = shoot_geodesic(m, y, xi);
  double worst = 0.0;
  for (const auto& s : g.samples) worst = std::max(worst, std::abs(m.norm(s.x, s.v) - 1.0));
  CHECK(worst <= 1e-6);
}

TEST_CASE("flow semigroup: re-shooting reproduces the tail") {
  MetricField m = MetricField::conformal_linear(0.5);
  Vec2 y, inward, tangent;
  m.boundary_frame(0.7, &y, &inward, &tangent);
  const Vec2 xi = inward * std::cos(-0.3) + tangent * std::sin(-0.3);
  ShootOptions opt;
  opt.step = 1e-3;
  Geodesic g = shoot_geodesic(m, y, xi, opt);
  const std::size_t mid = g.samples.size() / 2;
  const GeodesicSample& sm = g.samples[mid];
  const Vec2 v = sm.v / m.norm(sm.x, sm.v);
  Geodesic tail = shoot_geodesic(m, sm.x, v, opt);
  // tau_+(phi_t) = tau_+ - t
  CHECK(tail.exit_time == doctest::Approx(g.exit_time - sm.t).epsilon(1e-6));
  for (std::size_t i = 0; i + 1 < tail.samples.size() && mid + i + 1 < g.samples.size(); i += 50) {
    CHECK((tail.samples[i].x - g.samples[mid + i].x).norm() <= 1e-6);
  }
}

TEST_CASE("semigroup property of the exit time at interior times") {
  MetricField m = MetricField::gaussian_bump(0.25, 0.6, {0.0, 0.2});
  Vec2 y, inward, tangent;
  m.boundary_frame(2.2, &y, &inward, &tangent);
  const Vec2 xi = inward * std::cos(0.55) + tangent * std::sin(0.55);
  Geodesic g = shoot_geodesic(m, y, xi);
  const double tau = g.exit_time;
  for (int k = 1; k <= 5; ++k) {
    const std::size_t at = k * (g.samples.size() - 2) / 6;
    const GeodesicSample& s = g.samples[at];
    const Vec2 v = s.v / m.norm(s.x, s.v);
    const double tail = exit_time(m, s.x, v);
    CHECK(std::abs(tail - (tau - s.t)) <= 1e-4);
  }
}

TEST_CASE("trap guard raises on non-trapping violation") {
  // a deep metric well that traps a circling ray would exceed the bound;
  // emulate with a tiny trap factor so the guard path is exercised
  MetricField m = MetricField::euclidean();
  ShootOptions opt;
  opt.trap_factor = 1e-4;
  CHECK_THROWS_AS(shoot_geodesic(m, {0.0, 0.0}, {1.0, 0.0}, opt), Error);
}

TEST_CASE("euclidean distance equals chart distance") {
  MetricField m = MetricField::euclidean();
  CHECK(geodesic_distance(m, {0.3, 0.1}, {-0.5, 0.4}) ==
        doctest::Approx(std::hypot(0.8, 0.3)).epsilon(1e-8));
  CHECK(geodesic_distance(m, {0.2, -0.7}, {0.2, -0.7}) == doctest::Approx(0.0));
}

TEST_CASE("triangle inequality on random triples") {
  MetricField m = MetricField::gaussian_bump(0.2, 0.8, {-0.1, 0.3});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.65, 0.65);
  for (int i = 0; i < 100; ++i) {
    const Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const double ab = geodesic_distance(m, a, b);
    const double bc = geodesic_distance(m, b, c);
    const double ac = geodesic_distance(m, a, c);
    CHECK(ac <= ab + bc + 1e-6);
  }
}

TEST_CASE("distance agrees with exit time for boundary-to-boundary rays") {
  MetricField m = MetricField::conformal_linear(0.4);
  Vec2 y, inward, tangent;
  m.boundary_frame(0.3, &y, &inward, &tangent);
  const Vec2 xi = inward * std::cos(0.2) + tangent * std::sin(0.2);
  Geodesic g = shoot_geodesic(m, y, xi);
  const Vec2 z = g.samples.back().x;
  CHECK(std::abs(geodesic_distance(m, y, z) - g.exit_time) <= 1e-4);
}

TEST_CASE("curvature: flat, conformal and constant-curvature charts") {
  MetricField flat = MetricField::euclidean();
  CHECK(flat.gaussian_curvature({0.4, 0.1}) == 0.0);

  // K = -e^{-2 lam} (Delta lam) against the Brioschi evaluation
  MetricField bump = MetricField::gaussian_bump(0.3, 0.6, {0.1, -0.2});
  MetricField fd = MetricField::from_callable([](Vec2 x) {
    const Vec2 d = x - Vec2{0.1, -0.2};
    const double e = std::exp(2.0 * 0.3 * std::exp(-d.norm2() / 0.36));
    return Mat2{e, 0.0, e};
  }, "fd-bump");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 25; ++i) {
    const Vec2 x{u(rng), u(rng)};
    CHECK(std::abs(bump.gaussian_curvature(x) - fd.gaussian_curvature(x)) <= 1e-4);
  }

  MetricField sph = MetricField::sphere_chart(0.4);
  for (int i = 0; i < 10; ++i) {
    const Vec2 x{u(rng), u(rng)};
    CHECK(sph.gaussian_curvature(x) == doctest::Approx(0.4).epsilon(1e-3));
  }
}

TEST_CASE("inflow bundle measure matches the closed form") {
  MetricField m = MetricField::euclidean();
  InflowGrid g = sample_inflow_bundle(m, 64, 32);
  CHECK(g.measure() == doctest::Approx(4.0 * M_PI).epsilon(1e-3 / (4.0 * M_PI)));
  for (const auto& r : g.rays) {
    const Vec2 nu = m.outward_normal(r.y);
    CHECK(m.inner(r.y, r.xi, nu) < 0.0);
    CHECK(std::abs(m.norm(r.y, r.xi) - 1.0) <= 1e-12);
    CHECK(r.mu > 0.0);
    CHECK(r.mu <= 1.0);
  }
  // direction refinement leaves the quadrature measure essentially unchanged
  InflowGrid g2 = sample_inflow_bundle(m, 64, 64);
  CHECK(std::abs(g.measure() - g2.measure()) <= 1e-4);
}

TEST_CASE("k_plus vanishes for flat and nonpositively curved metrics") {
  CHECK(k_plus(MetricField::euclidean(), 8, 8).value == 0.0);
  // lam = x^1 has Delta lam = 0 so K = 0 identically as well
  CHECK(k_plus(MetricField::conformal_linear(0.3), 8, 8).value <= 1e-12);
}

TEST_CASE("k_plus of a mildly curved bump matches refined sampling") {
  MetricField m = MetricField::gaussian_bump(0.05, 0.9, {0.0, 0.0});
  KPlusReport coarse = k_plus(m, 16, 16, 4e-3);
  KPlusReport fine = k_plus(m, 32, 32, 2e-3);
  CHECK(coarse.value > 0.0);
  CHECK(std::abs(coarse.value - fine.value) <= 0.05 * fine.value);
  CHECK(fine.hypothesis_ok());
}
