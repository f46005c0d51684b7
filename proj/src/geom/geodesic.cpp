#include "geotomo/geom/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace geotomo {

namespace {

struct State {
  Vec2 x, v;
  double b = 0.0, db = 0.0;
};

struct Deriv {
  Vec2 dx, dv;
  double db = 0.0, ddb = 0.0;
};

inline Deriv rhs(const MetricField& m, const State& s, bool jacobi) {
  Deriv d;
  d.dx = s.v;
  const Christoffel c = m.christoffel_raw(s.x);
  const Vec2 q = c.contract(s.v);
  d.dv = {-q.x, -q.y};
  if (jacobi) {
    d.db = s.db;
    d.ddb = -m.gaussian_curvature(s.x) * s.b;
  }
  return d;
}

inline State rk4_step(const MetricField& m, const State& s, double h, bool jacobi) {
  const Deriv k1 = rhs(m, s, jacobi);
  State s2{s.x + k1.dx * (0.5 * h), s.v + k1.dv * (0.5 * h), s.b + 0.5 * h * k1.db,
           s.db + 0.5 * h * k1.ddb};
  const Deriv k2 = rhs(m, s2, jacobi);
  State s3{s.x + k2.dx * (0.5 * h), s.v + k2.dv * (0.5 * h), s.b + 0.5 * h * k2.db,
           s.db + 0.5 * h * k2.ddb};
  const Deriv k3 = rhs(m, s3, jacobi);
  State s4{s.x + k3.dx * h, s.v + k3.dv * h, s.b + h * k3.db, s.db + h * k3.ddb};
  const Deriv k4 = rhs(m, s4, jacobi);
  const double c = h / 6.0;
  return {s.x + (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx) * c,
          s.v + (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv) * c,
          s.b + c * (k1.db + 2.0 * k2.db + 2.0 * k3.db + k4.db),
          s.db + c * (k1.ddb + 2.0 * k2.ddb + 2.0 * k3.ddb + k4.ddb)};
}

}  // namespace

void orthonormal_frame(const MetricField& m, Vec2 x, Vec2* e1, Vec2* e2) {
  const Mat2 g = m.g(x);
  Vec2 a{1.0, 0.0};
  a = a / std::sqrt(g.quad(a, a));
  Vec2 b{0.0, 1.0};
  const double proj = g.quad(b, a);
  b = b - a * proj;
  b = b / std::sqrt(g.quad(b, b));
  if (e1) *e1 = a;
  if (e2) *e2 = b;
}

Vec2 metric_rotate(const MetricField& m, Vec2 x, Vec2 v) {
  const Mat2 g = m.g(x);
  const double s = std::sqrt(g.det());
  const Vec2 gv = g.apply(v);
  return {-gv.y / s, gv.x / s};
}

double trace_geodesic(const MetricField& m, Vec2 x, Vec2 xi, const ShootOptions& opt,
                      const std::function<void(const GeodesicSample&)>& visit) {
  const double R = m.chart_radius();
  const bool jac = opt.with_jacobi;
  State s{x, xi, 0.0, jac ? 1.0 : 0.0};
  double t = 0.0;
  if (visit) visit({t, s.x, s.v, s.b, s.db});
  const double trap = opt.trap_factor * 2.0 * (2.0 * R);
  while (true) {
    const State next = rk4_step(m, s, opt.step, jac);
    if (next.x.norm() >= R) {
      // bisection on the step fraction, resolves the crossing to 1e-10
      double lo = 0.0, hi = opt.step;
      State shi = next;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const State sm = rk4_step(m, s, mid, jac);
        if (sm.x.norm() >= R) {
          hi = mid;
          shi = sm;
        } else {
          lo = mid;
        }
      }
      t += hi;
      if (visit) visit({t, shi.x, shi.v, shi.b, shi.db});
      return t;
    }
    s = next;
    t += opt.step;
    if (visit) visit({t, s.x, s.v, s.b, s.db});
    if (t > trap)
      fail(ErrorKind::NonTrapping,
           "geodesic exceeded the trap bound (arclength " + std::to_string(t) +
               "); metric is not convex non-trapping along this ray");
  }
}

Geodesic shoot_geodesic(const MetricField& m, Vec2 x, Vec2 xi, const ShootOptions& opt) {
  m.require_inside(x);
  const double speed = m.norm(x, xi);
  if (std::abs(speed - 1.0) > opt.unit_speed_tol)
    fail(ErrorKind::Domain, "direction is not g-unit (|xi|_g = " + std::to_string(speed) + ")");
  Geodesic g;
  g.entry_point = x;
  g.entry_dir = xi;
  g.exit_time = trace_geodesic(m, x, xi, opt,
                               [&](const GeodesicSample& s) { g.samples.push_back(s); });
  return g;
}

double exit_time(const MetricField& m, Vec2 y, Vec2 xi, const ShootOptions& opt) {
  m.require_inside(y);
  const double R = m.chart_radius();
  if (y.norm() >= R * (1.0 - 1e-12)) {
    const Vec2 nu = m.outward_normal(y);
    if (m.inner(y, xi, nu) >= 0.0) return 0.0;  // outflow ray
  }
  return trace_geodesic(m, y, xi, opt, nullptr);
}

TwoPointSolution solve_two_point(const MetricField& m, Vec2 x, Vec2 y, const ShootOptions& opt) {
  m.require_inside(x);
  m.require_inside(y);
  const Vec2 d = y - x;
  const double euclid = d.norm();
  if (euclid < 1e-14) return {0.0, 0.0, {1.0, 0.0}};

  Vec2 e1, e2;
  orthonormal_frame(m, x, &e1, &e2);
  auto dir_of = [&](double phi) { return e1 * std::cos(phi) + e2 * std::sin(phi); };

  // initial guess: the chart chord projected onto the frame
  const Mat2 g0 = m.g(x);
  double phi = std::atan2(g0.quad(d, e2), g0.quad(d, e1));
  double len = m.norm(x, d);

  ShootOptions o = opt;
  o.with_jacobi = true;

  auto endpoint = [&](double phi_k, double t_k, Vec2* pos, Vec2* vel, double* bj) {
    // integrate up to arclength t_k from x (interior run; no boundary stop)
    State s{x, dir_of(phi_k), 0.0, 1.0};
    double t = 0.0;
    const int nfull = static_cast<int>(std::floor(t_k / o.step));
    for (int i = 0; i < nfull; ++i) {
      s = rk4_step(m, s, o.step, true);
      t += o.step;
    }
    const double rem = t_k - t;
    if (rem > 0.0) s = rk4_step(m, s, rem, true);
    *pos = s.x;
    *vel = s.v;
    *bj = s.b;
  };

  auto try_newton = [&](double phi0, double len0, TwoPointSolution* out) {
    double p = phi0, t = len0;
    for (int it = 0; it < 60; ++it) {
      if (t < 0.0) t = 1e-6;
      if (t > opt.trap_factor * 4.0 * m.chart_radius()) return false;
      Vec2 pos, vel;
      double bj;
      endpoint(p, t, &pos, &vel, &bj);
      const Vec2 F = pos - y;
      if (F.norm() < 1e-11 * std::max(1.0, euclid)) {
        *out = {p, t, dir_of(p)};
        return true;
      }
      const Vec2 jphi = metric_rotate(m, pos, vel) * bj;  // d pos / d phi
      const double det = vel.x * jphi.y - vel.y * jphi.x;
      if (std::abs(det) < 1e-14) return false;
      const double dt = (-F.x * jphi.y + F.y * jphi.x) / det;
      const double dp = (-vel.x * F.y + vel.y * F.x) / det;
      // damped update keeps the iteration inside a sane region
      const double lim = 0.5;
      t += std::clamp(dt, -lim, lim);
      p += std::clamp(dp, -lim, lim);
    }
    return false;
  };

  TwoPointSolution sol;
  if (try_newton(phi, len, &sol)) return sol;

  // fall back to a direction scan before declaring failure
  double best_phi = phi, best_len = len, best_miss = 1e300;
  for (int i = 0; i < 96; ++i) {
    const double p = -M_PI + 2.0 * M_PI * (i + 0.5) / 96.0;
    State s{x, dir_of(p), 0.0, 1.0};
    double t = 0.0, miss = (s.x - y).norm(), at = 0.0;
    const double tmax = 6.0 * m.chart_radius();
    while (t < tmax && s.x.norm() < m.chart_radius()) {
      s = rk4_step(m, s, 4.0 * o.step, true);
      t += 4.0 * o.step;
      const double mm = (s.x - y).norm();
      if (mm < miss) {
        miss = mm;
        at = t;
      }
    }
    if (miss < best_miss) {
      best_miss = miss;
      best_phi = p;
      best_len = std::max(at, 1e-3);
    }
  }
  if (try_newton(best_phi, best_len, &sol)) return sol;
  fail(ErrorKind::Simplicity,
       "two-point geodesic solve failed to converge; metric may not be simple here");
}

double geodesic_distance(const MetricField& m, Vec2 x, Vec2 y, const ShootOptions& opt) {
  return solve_two_point(m, x, y, opt).length;
}

}  // namespace geotomo
