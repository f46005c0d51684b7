#include "geotomo/xray/transform.hpp"

#include <cmath>
#include <random>

#include "geotomo/core/threadpool.hpp"
#include "geotomo/geom/geodesic.hpp"

namespace geotomo {

RayData xray_function(const MetricField& m, const InflowGrid& bundle,
                      const std::function<cd(Vec2)>& f, double step, int workers) {
  RayData out(bundle);
  ShootOptions opt;
  opt.step = step;
  parallel_for(out.bundle.rays.size(), workers, [&](std::size_t i) {
    const InflowRay& r = out.bundle.rays[i];
    cd acc{}, prev{};
    double prev_t = 0.0;
    bool first = true;
    trace_geodesic(m, r.y, r.xi, opt, [&](const GeodesicSample& s) {
      const cd val = f(s.x);
      if (!first) acc += 0.5 * (val + prev) * (s.t - prev_t);
      prev = val;
      prev_t = s.t;
      first = false;
    });
    out.values[i] = acc;
  });
  return out;
}

RayData xray_oneform(const MetricField& m, const InflowGrid& bundle,
                     const std::function<CVec2(Vec2)>& a, double step, int workers) {
  RayData out(bundle);
  ShootOptions opt;
  opt.step = step;
  parallel_for(out.bundle.rays.size(), workers, [&](std::size_t i) {
    const InflowRay& r = out.bundle.rays[i];
    cd acc{}, prev{};
    double prev_t = 0.0;
    bool first = true;
    trace_geodesic(m, r.y, r.xi, opt, [&](const GeodesicSample& s) {
      const CVec2 av = a(s.x);
      const cd val = av.x * s.v.x + av.y * s.v.y;
      if (!first) acc += 0.5 * (val + prev) * (s.t - prev_t);
      prev = val;
      prev_t = s.t;
      first = false;
    });
    out.values[i] = acc;
  });
  return out;
}

cd transport_integral(const MetricField& m, Vec2 x, Vec2 xi,
                      const std::function<CVec2(Vec2)>& a, double step) {
  // the integral is invariant under reparametrization; integrate at unit
  // speed so discretization cannot break that invariance
  const double speed = m.norm(x, xi);
  if (speed <= 0.0) fail(ErrorKind::Domain, "zero direction in transport integral");
  xi = xi / speed;
  ShootOptions opt;
  opt.step = step;
  cd acc{}, prev{};
  double prev_t = 0.0;
  bool first = true;
  trace_geodesic(m, x, xi, opt, [&](const GeodesicSample& s) {
    const CVec2 av = a(s.x);
    const cd val = av.x * s.v.x + av.y * s.v.y;
    if (!first) acc += 0.5 * (val + prev) * (s.t - prev_t);
    prev = val;
    prev_t = s.t;
    first = false;
  });
  return acc;
}

KineticReport kinetic_equation_check(const MetricField& m, const std::function<CVec2(Vec2)>& a,
                                     int n_points, double h, double step, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(-0.7, 0.7), ua(0.0, 2.0 * M_PI);
  KineticReport rep;
  for (int p = 0; p < n_points; ++p) {
    const Vec2 x{ur(rng), ur(rng)};
    Vec2 e1, e2;
    orthonormal_frame(m, x, &e1, &e2);
    const double phi = ua(rng);
    const Vec2 xi = e1 * std::cos(phi) + e2 * std::sin(phi);

    // flow-advanced and flow-retarded phase points by single RK4 steps
    ShootOptions one;
    one.step = h;
    Vec2 xp, vp, xm, vm;
    {
      // forward step of size h
      double taken = 0.0;
      trace_geodesic(m, x, xi, one, [&](const GeodesicSample& s) {
        if (s.t >= h - 1e-15 && taken == 0.0) {
          xp = s.x;
          vp = s.v;
          taken = s.t;
        }
      });
      // backward: integrate from (x, -xi) and flip the arrival velocity
      taken = 0.0;
      trace_geodesic(m, x, Vec2{-xi.x, -xi.y}, one, [&](const GeodesicSample& s) {
        if (s.t >= h - 1e-15 && taken == 0.0) {
          xm = s.x;
          vm = Vec2{-s.v.x, -s.v.y};
          taken = s.t;
        }
      });
    }
    const cd up = transport_integral(m, xp, vp, a, step);
    const cd um = transport_integral(m, xm, vm, a, step);
    const cd hu = (up - um) / (2.0 * h);
    const CVec2 ax = a(x);
    const cd target = -(ax.x * xi.x + ax.y * xi.y);
    rep.max_residual = std::max(rep.max_residual, std::abs(hu - target));

    const cd u1 = transport_integral(m, x, xi, a, step);
    const cd u2 = transport_integral(m, x, xi * 2.0, a, step);
    rep.max_homogeneity_drift = std::max(rep.max_homogeneity_drift, std::abs(u2 - u1));
  }
  return rep;
}

IdentityReport sphere_bundle_identity_check(const Operators& ops, const CovectorField& a,
                                            int n_directions) {
  const auto& grid = ops.grid();
  const MetricField& m = ops.metric();
  const double dphi = 2.0 * M_PI / n_directions;
  double lhs = 0.0, rhs = 0.0;
  const std::vector<double>& vol = ops.volume_weights();
  for (int i = 0; i < grid->size(); ++i) {
    const Vec2 x = grid->point(i);
    Vec2 e1, e2;
    orthonormal_frame(m, x, &e1, &e2);
    const std::size_t id = static_cast<std::size_t>(i);
    // real covector assumed; pair with the frame vectors
    const double c1 = a.c1[id].real() * e1.x + a.c2[id].real() * e1.y;
    const double c2 = a.c1[id].real() * e2.x + a.c2[id].real() * e2.y;
    lhs += vol[id] * (c1 * c1 + c2 * c2) * 2.0 * M_PI;
    double dir = 0.0;
    for (int d = 0; d < n_directions; ++d) {
      const double phi = d * dphi;
      const double pr = c1 * std::cos(phi) + c2 * std::sin(phi);
      dir += pr * pr * dphi;
    }
    rhs += vol[id] * 2.0 * dir;
  }
  IdentityReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.rel_err = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
  return rep;
}

RayTransform::RayTransform(const MetricField& m, InflowGrid bundle,
                           std::shared_ptr<const PolarGrid> grid, double integrate_step,
                           double quad_step, int workers)
    : bundle_(std::move(bundle)), grid_(std::move(grid)) {
  samples_.resize(bundle_.rays.size());
  ShootOptions opt;
  opt.step = integrate_step;
  parallel_for(bundle_.rays.size(), workers, [&](std::size_t i) {
    const InflowRay& r = bundle_.rays[i];
    // collect integrator samples at approximately quad_step spacing
    std::vector<GeodesicSample> pts;
    const int every = std::max(1, static_cast<int>(std::round(quad_step / opt.step)));
    int count = 0;
    GeodesicSample last{};
    trace_geodesic(m, r.y, r.xi, opt, [&](const GeodesicSample& s) {
      if (count % every == 0) pts.push_back(s);
      last = s;
      ++count;
    });
    if (pts.empty() || pts.back().t < last.t) pts.push_back(last);
    std::vector<QuadSample>& row = samples_[i];
    row.reserve(pts.size());
    for (std::size_t q = 0; q < pts.size(); ++q) {
      // trapezoid weight over the nonuniform subsample
      double w;
      if (pts.size() == 1) {
        w = 0.0;
      } else if (q == 0) {
        w = 0.5 * (pts[1].t - pts[0].t);
      } else if (q + 1 == pts.size()) {
        w = 0.5 * (pts[q].t - pts[q - 1].t);
      } else {
        w = 0.5 * (pts[q + 1].t - pts[q - 1].t);
      }
      const PolarGrid::InterpStencil st = grid_->interpolate(pts[q].x);
      if (!st.inside || w == 0.0) continue;
      QuadSample qs;
      for (int a = 0; a < 4; ++a) {
        qs.idx[a] = st.idx[a];
        qs.w[a] = st.w[a] * w;
      }
      qs.v1 = pts[q].v.x;
      qs.v2 = pts[q].v.y;
      row.push_back(qs);
    }
  });
}

RayData RayTransform::forward(const ScalarField& f) const {
  RayData out(bundle_);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    cd acc{};
    for (const QuadSample& q : samples_[i])
      for (int a = 0; a < 4; ++a) acc += q.w[a] * f.v[static_cast<std::size_t>(q.idx[a])];
    out.values[i] = acc;
  }
  return out;
}

RayData RayTransform::forward(const CovectorField& c) const {
  RayData out(bundle_);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    cd acc{};
    for (const QuadSample& q : samples_[i])
      for (int a = 0; a < 4; ++a) {
        const std::size_t id = static_cast<std::size_t>(q.idx[a]);
        acc += q.w[a] * (c.c1[id] * q.v1 + c.c2[id] * q.v2);
      }
    out.values[i] = acc;
  }
  return out;
}

void RayTransform::adjoint(const std::vector<cd>& y, ScalarField* out) const {
  std::fill(out->v.begin(), out->v.end(), cd{});
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const cd yi = y[i];
    for (const QuadSample& q : samples_[i])
      for (int a = 0; a < 4; ++a) out->v[static_cast<std::size_t>(q.idx[a])] += q.w[a] * yi;
  }
}

void RayTransform::accumulate_normal_diagonal(const std::vector<double>& w, bool oneform,
                                              std::vector<double>* diag) const {
  const std::size_t n = static_cast<std::size_t>(grid_->size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    for (const QuadSample& q : samples_[i])
      for (int a = 0; a < 4; ++a) {
        const std::size_t id = static_cast<std::size_t>(q.idx[a]);
        const double base = w[i] * q.w[a] * q.w[a];
        if (!oneform) {
          (*diag)[id] += base;
        } else {
          (*diag)[id] += base * q.v1 * q.v1;
          (*diag)[id + n] += base * q.v2 * q.v2;
        }
      }
  }
  // guard empty rows (nodes no ray touches)
  double mx = 0.0;
  for (double d : *diag) mx = std::max(mx, d);
  for (double& d : *diag) d = std::max(d, 1e-12 * mx);
}

void RayTransform::adjoint(const std::vector<cd>& y, CovectorField* out) const {
  std::fill(out->c1.begin(), out->c1.end(), cd{});
  std::fill(out->c2.begin(), out->c2.end(), cd{});
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const cd yi = y[i];
    for (const QuadSample& q : samples_[i])
      for (int a = 0; a < 4; ++a) {
        const std::size_t id = static_cast<std::size_t>(q.idx[a]);
        out->c1[id] += q.w[a] * q.v1 * yi;
        out->c2[id] += q.w[a] * q.v2 * yi;
      }
  }
}

}  // namespace geotomo
