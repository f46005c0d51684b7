#include "geotomo/geom/metric.hpp"

#include <cmath>
#include <vector>

namespace geotomo {

namespace {

constexpr double kFdCells = 256.0;

std::array<Mat2, 2> fd_dg(const MetricField::GFun& g, Vec2 x, double h) {
  auto d1 = [&](auto f) {
    // 4th-order central differences, one component direction at a time
    Mat2 m1 = f(-2.0), m2 = f(-1.0), m3 = f(1.0), m4 = f(2.0);
    return Mat2{(m1.a11 - 8.0 * m2.a11 + 8.0 * m3.a11 - m4.a11) / (12.0 * h),
                (m1.a12 - 8.0 * m2.a12 + 8.0 * m3.a12 - m4.a12) / (12.0 * h),
                (m1.a22 - 8.0 * m2.a22 + 8.0 * m3.a22 - m4.a22) / (12.0 * h)};
  };
  Mat2 gx = d1([&](double s) { return g({x.x + s * h, x.y}); });
  Mat2 gy = d1([&](double s) { return g({x.x, x.y + s * h}); });
  return {gx, gy};
}

std::array<Mat2, 3> fd_d2g(const MetricField::GFun& g, Vec2 x, double h) {
  auto d2 = [&](auto f) {
    Mat2 m1 = f(-2.0), m2 = f(-1.0), m0 = f(0.0), m3 = f(1.0), m4 = f(2.0);
    auto c = [&](double a1, double a2, double a0, double a3, double a4) {
      return (-a1 + 16.0 * a2 - 30.0 * a0 + 16.0 * a3 - a4) / (12.0 * h * h);
    };
    return Mat2{c(m1.a11, m2.a11, m0.a11, m3.a11, m4.a11),
                c(m1.a12, m2.a12, m0.a12, m3.a12, m4.a12),
                c(m1.a22, m2.a22, m0.a22, m3.a22, m4.a22)};
  };
  Mat2 gxx = d2([&](double s) { return g({x.x + s * h, x.y}); });
  Mat2 gyy = d2([&](double s) { return g({x.x, x.y + s * h}); });
  // cross derivative: 4th-order y-difference of the x-derivative
  Mat2 dp2 = fd_dg(g, {x.x, x.y + 2.0 * h}, h)[0];
  Mat2 dp1 = fd_dg(g, {x.x, x.y + h}, h)[0];
  Mat2 dm1 = fd_dg(g, {x.x, x.y - h}, h)[0];
  Mat2 dm2 = fd_dg(g, {x.x, x.y - 2.0 * h}, h)[0];
  Mat2 gxy{(dm2.a11 - 8.0 * dm1.a11 + 8.0 * dp1.a11 - dp2.a11) / (12.0 * h),
           (dm2.a12 - 8.0 * dm1.a12 + 8.0 * dp1.a12 - dp2.a12) / (12.0 * h),
           (dm2.a22 - 8.0 * dm1.a22 + 8.0 * dp1.a22 - dp2.a22) / (12.0 * h)};
  return {gxx, gxy, gyy};
}

}  // namespace

void MetricField::require_inside(Vec2 x) const {
  if (!inside_chart(x, 1e-7))
    fail(ErrorKind::Domain, "point (" + std::to_string(x.x) + ", " + std::to_string(x.y) +
                                ") outside the chart disk of radius " + std::to_string(chart_radius_));
}

Mat2 MetricField::g_checked(Vec2 x) const {
  require_inside(x);
  Mat2 m = g_(x);
  if (!(m.a11 > 0.0) || !(m.det() > 0.0))
    fail(ErrorKind::Metric, "metric not positive definite at (" + std::to_string(x.x) + ", " +
                                std::to_string(x.y) + ")");
  return m;
}

double MetricField::sqrt_det(Vec2 x) const { return std::sqrt(g_(x).det()); }

Christoffel MetricField::christoffel_raw(Vec2 x) const {
  if (christoffel_fn_) return christoffel_fn_(x);
  const Mat2 gi = g_(x).inverse();
  const std::array<Mat2, 2> d = dg_(x);
  // dg[k](j,l) = d_k g_{jl}
  auto dgv = [&](int k, int j, int l) {
    const Mat2& m = d[static_cast<std::size_t>(k)];
    if (j == 0 && l == 0) return m.a11;
    if (j == 1 && l == 1) return m.a22;
    return m.a12;
  };
  auto giv = [&](int i, int l) {
    if (i == 0 && l == 0) return gi.a11;
    if (i == 1 && l == 1) return gi.a22;
    return gi.a12;
  };
  Christoffel c;
  for (int i = 0; i < 2; ++i) {
    double v[2][2];
    for (int j = 0; j < 2; ++j)
      for (int k = j; k < 2; ++k) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l)
          s += giv(i, l) * (dgv(j, l, k) + dgv(k, l, j) - dgv(l, j, k));
        v[j][k] = 0.5 * s;
      }
    c.g[static_cast<std::size_t>(i)] = Mat2{v[0][0], v[0][1], v[1][1]};
  }
  return c;
}

Christoffel MetricField::christoffel(Vec2 x) const {
  g_checked(x);
  return christoffel_raw(x);
}

double MetricField::gaussian_curvature(Vec2 x) const {
  if (curvature_fn_) return curvature_fn_(x);
  // Brioschi formula with E = g11, F = g12, G = g22.
  const Mat2 m = g_(x);
  const std::array<Mat2, 2> d1 = dg_(x);
  const std::array<Mat2, 3> d2 = d2g_(x);
  const double E = m.a11, F = m.a12, G = m.a22;
  const double Ex = d1[0].a11, Ey = d1[1].a11;
  const double Fx = d1[0].a12, Fy = d1[1].a12;
  const double Gx = d1[0].a22, Gy = d1[1].a22;
  const double Eyy = d2[2].a11, Gxx = d2[0].a22, Fxy = d2[1].a12;
  auto det3 = [](double a, double b, double c, double d, double e, double f, double g2,
                 double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g2) + c * (d * h - e * g2);
  };
  const double m1 = det3(-0.5 * Eyy + Fxy - 0.5 * Gxx, 0.5 * Ex, Fx - 0.5 * Ey,
                         Fy - 0.5 * Gx, E, F,
                         0.5 * Gy, F, G);
  const double m2 = det3(0.0, 0.5 * Ey, 0.5 * Gx,
                         0.5 * Ey, E, F,
                         0.5 * Gx, F, G);
  const double den = E * G - F * F;
  return (m1 - m2) / (den * den);
}

Vec2 MetricField::outward_normal(Vec2 x) const {
  const Vec2 rad = x / x.norm();
  const Mat2 gi = g_(x).inverse();
  const Vec2 raised = gi.apply(rad);
  const double len = std::sqrt(dot(rad, raised));  // = |dr|_g
  return raised / len;
}

void MetricField::boundary_frame(double s, Vec2* point, Vec2* inward, Vec2* tangent) const {
  const double R = chart_radius_;
  const Vec2 y{R * std::cos(s), R * std::sin(s)};
  const Vec2 nu = outward_normal(y);
  Vec2 t{-std::sin(s), std::cos(s)};
  t = t / norm(y, t);
  if (point) *point = y;
  if (inward) *inward = Vec2{-nu.x, -nu.y};
  if (tangent) *tangent = t;
}

double MetricField::boundary_length_element(double s) const {
  const double R = chart_radius_;
  const Vec2 y{R * std::cos(s), R * std::sin(s)};
  const Vec2 t{-R * std::sin(s), R * std::cos(s)};
  return norm(y, t);
}

MetricField MetricField::extended(double eps) const {
  MetricField m = *this;
  m.chart_radius_ = chart_radius_ + eps;
  return m;
}

MetricField MetricField::euclidean(double chart_radius) {
  MetricField m;
  m.name_ = "euclidean";
  m.chart_radius_ = chart_radius;
  m.analytic_ = true;
  m.g_ = [](Vec2) { return Mat2::identity(); };
  m.dg_ = [](Vec2) { return std::array<Mat2, 2>{Mat2{}, Mat2{}}; };
  m.d2g_ = [](Vec2) { return std::array<Mat2, 3>{Mat2{}, Mat2{}, Mat2{}}; };
  m.christoffel_fn_ = [](Vec2) { return Christoffel{}; };
  m.curvature_fn_ = [](Vec2) { return 0.0; };
  return m;
}

MetricField MetricField::conformal(std::function<double(Vec2)> lam,
                                   std::function<Vec2(Vec2)> grad_lam,
                                   std::function<std::array<double, 3>(Vec2)> hess_lam,
                                   std::string name, double chart_radius) {
  MetricField m;
  m.name_ = std::move(name);
  m.chart_radius_ = chart_radius;
  m.analytic_ = true;
  m.g_ = [lam](Vec2 x) {
    const double e = std::exp(2.0 * lam(x));
    return Mat2{e, 0.0, e};
  };
  m.dg_ = [lam, grad_lam](Vec2 x) {
    const double e = std::exp(2.0 * lam(x));
    const Vec2 gl = grad_lam(x);
    return std::array<Mat2, 2>{Mat2{2.0 * e * gl.x, 0.0, 2.0 * e * gl.x},
                               Mat2{2.0 * e * gl.y, 0.0, 2.0 * e * gl.y}};
  };
  m.d2g_ = [lam, grad_lam, hess_lam](Vec2 x) {
    const double e = std::exp(2.0 * lam(x));
    const Vec2 gl = grad_lam(x);
    const std::array<double, 3> h = hess_lam(x);
    const double c11 = 2.0 * e * (h[0] + 2.0 * gl.x * gl.x);
    const double c12 = 2.0 * e * (h[1] + 2.0 * gl.x * gl.y);
    const double c22 = 2.0 * e * (h[2] + 2.0 * gl.y * gl.y);
    return std::array<Mat2, 3>{Mat2{c11, 0.0, c11}, Mat2{c12, 0.0, c12}, Mat2{c22, 0.0, c22}};
  };
  m.christoffel_fn_ = [grad_lam](Vec2 x) {
    const Vec2 gl = grad_lam(x);
    Christoffel c;
    c.g[0] = Mat2{gl.x, gl.y, -gl.x};   // ^1: {11}=lx, {12}=ly, {22}=-lx
    c.g[1] = Mat2{-gl.y, gl.x, gl.y};   // ^2: {11}=-ly, {12}=lx, {22}=ly
    return c;
  };
  m.curvature_fn_ = [lam, hess_lam](Vec2 x) {
    const std::array<double, 3> h = hess_lam(x);
    return -std::exp(-2.0 * lam(x)) * (h[0] + h[2]);
  };
  return m;
}

MetricField MetricField::conformal_linear(double c, double chart_radius) {
  return conformal([c](Vec2 x) { return c * x.x; },
                   [c](Vec2) { return Vec2{c, 0.0}; },
                   [](Vec2) { return std::array<double, 3>{0.0, 0.0, 0.0}; },
                   "conformal-linear:" + std::to_string(c), chart_radius);
}

MetricField MetricField::gaussian_bump(double a, double w, Vec2 c, double chart_radius) {
  auto lam = [a, w, c](Vec2 x) {
    const Vec2 d = x - c;
    return a * std::exp(-d.norm2() / (w * w));
  };
  auto grad = [a, w, c](Vec2 x) {
    const Vec2 d = x - c;
    const double e = a * std::exp(-d.norm2() / (w * w));
    return Vec2{-2.0 * d.x / (w * w) * e, -2.0 * d.y / (w * w) * e};
  };
  auto hess = [a, w, c](Vec2 x) {
    const Vec2 d = x - c;
    const double iw2 = 1.0 / (w * w);
    const double e = a * std::exp(-d.norm2() * iw2);
    return std::array<double, 3>{e * (4.0 * d.x * d.x * iw2 * iw2 - 2.0 * iw2),
                                 e * 4.0 * d.x * d.y * iw2 * iw2,
                                 e * (4.0 * d.y * d.y * iw2 * iw2 - 2.0 * iw2)};
  };
  return conformal(lam, grad, hess,
                   "gaussian-bump:" + std::to_string(a) + "," + std::to_string(w) + "," +
                       std::to_string(c.x) + "," + std::to_string(c.y),
                   chart_radius);
}

MetricField MetricField::sphere_chart(double kappa, double chart_radius) {
  // lam = log 2 - log(1 + kappa |x|^2); constant curvature kappa
  auto lam = [kappa](Vec2 x) { return std::log(2.0) - std::log(1.0 + kappa * x.norm2()); };
  auto grad = [kappa](Vec2 x) {
    const double d = 1.0 + kappa * x.norm2();
    return Vec2{-2.0 * kappa * x.x / d, -2.0 * kappa * x.y / d};
  };
  auto hess = [kappa](Vec2 x) {
    const double d = 1.0 + kappa * x.norm2();
    const double d2 = d * d;
    return std::array<double, 3>{(-2.0 * kappa * d + 4.0 * kappa * kappa * x.x * x.x) / d2,
                                 4.0 * kappa * kappa * x.x * x.y / d2,
                                 (-2.0 * kappa * d + 4.0 * kappa * kappa * x.y * x.y) / d2};
  };
  return conformal(lam, grad, hess, "sphere:" + std::to_string(kappa), chart_radius);
}

MetricField MetricField::from_callable(GFun g, std::string name, double chart_radius) {
  MetricField m;
  m.name_ = std::move(name);
  m.chart_radius_ = chart_radius;
  m.analytic_ = false;
  const double h = 2.0 * chart_radius / kFdCells;
  GFun gf = g;
  m.g_ = g;
  m.dg_ = [gf, h](Vec2 x) { return fd_dg(gf, x, h); };
  m.d2g_ = [gf, h](Vec2 x) { return fd_d2g(gf, x, h); };
  return m;
}

MetricField make_metric(const std::string& preset, double chart_radius) {
  auto split_params = [](const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t next = s.find(',', pos);
      if (next == std::string::npos) next = s.size();
      out.push_back(std::stod(s.substr(pos, next - pos)));
      pos = next + 1;
    }
    return out;
  };
  const std::size_t colon = preset.find(':');
  const std::string kind = preset.substr(0, colon);
  std::vector<double> p;
  if (colon != std::string::npos) p = split_params(preset.substr(colon + 1));
  if (kind == "euclidean") return MetricField::euclidean(chart_radius);
  if (kind == "conformal-linear")
    return MetricField::conformal_linear(p.empty() ? 1.0 : p[0], chart_radius);
  if (kind == "gaussian-bump") {
    if (p.size() != 4) fail(ErrorKind::Config, "gaussian-bump metric needs amplitude,width,cx,cy");
    return MetricField::gaussian_bump(p[0], p[1], {p[2], p[3]}, chart_radius);
  }
  if (kind == "sphere") return MetricField::sphere_chart(p.empty() ? 0.5 : p[0], chart_radius);
  fail(ErrorKind::Config, "unknown metric preset '" + preset + "'");
}

}  // namespace geotomo
