#include "geotomo/fields/fields.hpp"

#include <cmath>

#include "geotomo/simd/kernels.hpp"

namespace geotomo {

ScalarField sample_scalar(std::shared_ptr<const PolarGrid> g, const std::function<cd(Vec2)>& f) {
  ScalarField out(g);
  const int n = g->size();
  for (int i = 0; i < n; ++i) out.v[static_cast<std::size_t>(i)] = f(g->point(i));
  return out;
}

VectorField sample_vector(std::shared_ptr<const PolarGrid> g, const std::function<CVec2(Vec2)>& f) {
  VectorField out(g);
  const int n = g->size();
  for (int i = 0; i < n; ++i) {
    const CVec2 v = f(g->point(i));
    out.c1[static_cast<std::size_t>(i)] = v.x;
    out.c2[static_cast<std::size_t>(i)] = v.y;
  }
  return out;
}

CovectorField sample_covector(std::shared_ptr<const PolarGrid> g, const std::function<CVec2(Vec2)>& f) {
  CovectorField out(g);
  const int n = g->size();
  for (int i = 0; i < n; ++i) {
    const CVec2 v = f(g->point(i));
    out.c1[static_cast<std::size_t>(i)] = v.x;
    out.c2[static_cast<std::size_t>(i)] = v.y;
  }
  return out;
}

void axpy(cd a, const ScalarField& x, ScalarField* y) {
  simd::kernels().zaxpy(x.v.size(), a, x.v.data(), y->v.data());
}

void axpy(cd a, const CovectorField& x, CovectorField* y) {
  simd::kernels().zaxpy(x.c1.size(), a, x.c1.data(), y->c1.data());
  simd::kernels().zaxpy(x.c2.size(), a, x.c2.data(), y->c2.data());
}

void scale(cd a, ScalarField* x) { simd::kernels().zscal(x->v.size(), a, x->v.data()); }

void scale(cd a, CovectorField* x) {
  simd::kernels().zscal(x->c1.size(), a, x->c1.data());
  simd::kernels().zscal(x->c2.size(), a, x->c2.data());
}

cd interpolate(const ScalarField& f, Vec2 x) {
  const PolarGrid::InterpStencil s = f.grid->interpolate(x);
  if (!s.inside) return cd{};
  cd acc{};
  for (int i = 0; i < 4; ++i) acc += s.w[i] * f.v[static_cast<std::size_t>(s.idx[i])];
  return acc;
}

CVec2 interpolate(const CovectorField& f, Vec2 x) {
  const PolarGrid::InterpStencil s = f.grid->interpolate(x);
  if (!s.inside) return CVec2{};
  CVec2 acc;
  for (int i = 0; i < 4; ++i) {
    acc.x += s.w[i] * f.c1[static_cast<std::size_t>(s.idx[i])];
    acc.y += s.w[i] * f.c2[static_cast<std::size_t>(s.idx[i])];
  }
  return acc;
}

AnalyticScalar analytic_gaussian(cd factor, double w, Vec2 c) {
  const double iw2 = 1.0 / (w * w);
  AnalyticScalar s;
  s.f = [factor, iw2, c](Vec2 x) { return factor * std::exp(-(x - c).norm2() * iw2); };
  s.grad = [factor, iw2, c](Vec2 x) {
    const Vec2 d = x - c;
    const cd e = factor * std::exp(-d.norm2() * iw2);
    return CVec2{-2.0 * d.x * iw2 * e, -2.0 * d.y * iw2 * e};
  };
  s.hess = [factor, iw2, c](Vec2 x) {
    const Vec2 d = x - c;
    const cd e = factor * std::exp(-d.norm2() * iw2);
    return std::array<cd, 3>{e * (4.0 * d.x * d.x * iw2 * iw2 - 2.0 * iw2),
                             e * (4.0 * d.x * d.y * iw2 * iw2),
                             e * (4.0 * d.y * d.y * iw2 * iw2 - 2.0 * iw2)};
  };
  return s;
}

AnalyticScalar analytic_dirichlet_bump(cd factor, double w, Vec2 c) {
  AnalyticScalar g = analytic_gaussian(factor, w, c);
  AnalyticScalar s;
  s.f = [g](Vec2 x) { return (1.0 - x.norm2()) * g.f(x); };
  s.grad = [g](Vec2 x) {
    const cd gv = g.f(x);
    const CVec2 gg = g.grad(x);
    const double q = 1.0 - x.norm2();
    return CVec2{q * gg.x - 2.0 * x.x * gv, q * gg.y - 2.0 * x.y * gv};
  };
  s.hess = [g](Vec2 x) {
    const cd gv = g.f(x);
    const CVec2 gg = g.grad(x);
    const std::array<cd, 3> gh = g.hess(x);
    const double q = 1.0 - x.norm2();
    return std::array<cd, 3>{q * gh[0] - 4.0 * x.x * gg.x - 2.0 * gv,
                             q * gh[1] - 2.0 * x.x * gg.y - 2.0 * x.y * gg.x,
                             q * gh[2] - 4.0 * x.y * gg.y - 2.0 * gv};
  };
  return s;
}

AnalyticCovector analytic_curl_bump(cd factor, double w, Vec2 c) {
  AnalyticScalar g = analytic_gaussian(factor, w, c);
  AnalyticCovector a;
  a.a = [g, c](Vec2 x) {
    const cd gv = g.f(x);
    return CVec2{-(x.y - c.y) * gv, (x.x - c.x) * gv};
  };
  a.da = [g, c](Vec2 x) {
    const cd gv = g.f(x);
    const CVec2 gg = g.grad(x);
    const double dx = x.x - c.x, dy = x.y - c.y;
    // a1 = -dy g, a2 = dx g
    return std::array<cd, 4>{-dy * gg.x, -gv - dy * gg.y, gv + dx * gg.x, dx * gg.y};
  };
  return a;
}

AnalyticCovector analytic_gradient_bump(cd factor, double w, Vec2 c) {
  AnalyticScalar phi = analytic_dirichlet_bump(factor, w, c);
  AnalyticCovector a;
  a.a = [phi](Vec2 x) { return phi.grad(x); };
  a.da = [phi](Vec2 x) {
    const std::array<cd, 3> h = phi.hess(x);
    return std::array<cd, 4>{h[0], h[1], h[1], h[2]};
  };
  return a;
}

namespace {

std::vector<double> parse_params(const std::string& s, std::size_t from) {
  std::vector<double> out;
  std::size_t pos = from;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(std::stod(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

}  // namespace

AnalyticScalar make_scalar_preset(const std::string& preset) {
  const std::size_t colon = preset.find(':');
  const std::string kind = preset.substr(0, colon);
  std::vector<double> p;
  if (colon != std::string::npos) p = parse_params(preset, colon + 1);
  if (kind == "zero") {
    AnalyticScalar s;
    s.f = [](Vec2) { return cd{}; };
    s.grad = [](Vec2) { return CVec2{}; };
    s.hess = [](Vec2) { return std::array<cd, 3>{}; };
    return s;
  }
  if (kind == "gauss" && p.size() == 4) return analytic_gaussian(p[0], p[1], {p[2], p[3]});
  if (kind == "dirichlet-gauss" && p.size() == 4)
    return analytic_dirichlet_bump(p[0], p[1], {p[2], p[3]});
  fail(ErrorKind::Config, "unknown scalar preset '" + preset + "'");
}

std::function<CVec2(Vec2)> make_vector_preset(const std::string& preset) {
  const std::size_t colon = preset.find(':');
  const std::string kind = preset.substr(0, colon);
  std::vector<double> p;
  if (colon != std::string::npos) p = parse_params(preset, colon + 1);
  if (kind == "zero") return [](Vec2) { return CVec2{}; };
  if (kind == "constant" && p.size() == 2)
    return [p](Vec2) { return CVec2{p[0], p[1]}; };
  if (kind == "rotation") return [](Vec2 x) { return CVec2{-x.y, x.x}; };
  if (kind == "curl-gauss" && p.size() == 4) {
    AnalyticCovector a = analytic_curl_bump(p[0], p[1], {p[2], p[3]});
    return [a](Vec2 x) { return a.a(x); };
  }
  if (kind == "grad-gauss" && p.size() == 4) {
    AnalyticCovector a = analytic_gradient_bump(p[0], p[1], {p[2], p[3]});
    return [a](Vec2 x) { return a.a(x); };
  }
  fail(ErrorKind::Config, "unknown vector preset '" + preset + "'");
}

}  // namespace geotomo
