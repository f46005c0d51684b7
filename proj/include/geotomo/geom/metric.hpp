#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "geotomo/core/error.hpp"
#include "geotomo/core/vec.hpp"

namespace geotomo {

// Christoffel symbols at a point, Gamma[i](j,k) symmetric in (j,k).
struct Christoffel {
  std::array<Mat2, 2> g;  // g[i].a11 = Gamma^i_{11}, .a12 = Gamma^i_{12}, .a22 = Gamma^i_{22}
  Vec2 contract(Vec2 v) const {
    return {g[0].quad(v, v), g[1].quad(v, v)};
  }
};

// Riemannian metric on the closed disk chart of the given radius. All
// presets are entire analytic expressions, so evaluation slightly outside
// the disk (finite-difference stencils, extension manifolds) is well
// defined. Immutable after construction; safe for concurrent use.
class MetricField {
 public:
  using GFun = std::function<Mat2(Vec2)>;
  using DGFun = std::function<std::array<Mat2, 2>(Vec2)>;    // d/dx1 g, d/dx2 g
  using D2GFun = std::function<std::array<Mat2, 3>(Vec2)>;   // d11 g, d12 g, d22 g

  static MetricField euclidean(double chart_radius = 1.0);
  // g = e^{2 lam} * delta for a supplied profile with analytic derivatives.
  static MetricField conformal(std::function<double(Vec2)> lam,
                               std::function<Vec2(Vec2)> grad_lam,
                               std::function<std::array<double, 3>(Vec2)> hess_lam,
                               std::string name, double chart_radius = 1.0);
  // lam(x) = c * x^1
  static MetricField conformal_linear(double c = 1.0, double chart_radius = 1.0);
  // lam(x) = a * exp(-|x - c|^2 / w^2)
  static MetricField gaussian_bump(double amplitude, double width, Vec2 center,
                                   double chart_radius = 1.0);
  // constant-curvature chart g = 4 / (1 + kappa |x|^2)^2 * delta
  static MetricField sphere_chart(double kappa, double chart_radius = 1.0);
  // Arbitrary metric without analytic derivatives; derivatives fall back to
  // 4th-order central differences at the 256-cell chart resolution.
  static MetricField from_callable(GFun g, std::string name, double chart_radius = 1.0);

  const std::string& name() const { return name_; }
  double chart_radius() const { return chart_radius_; }
  bool has_analytic_derivatives() const { return analytic_; }

  bool inside_chart(Vec2 x, double slack = 1e-9) const {
    return x.norm() <= chart_radius_ * (1.0 + slack);
  }
  void require_inside(Vec2 x) const;

  Mat2 g(Vec2 x) const { return g_(x); }
  Mat2 g_checked(Vec2 x) const;  // domain + SPD validation
  Mat2 g_inv(Vec2 x) const { return g_(x).inverse(); }
  double sqrt_det(Vec2 x) const;
  std::array<Mat2, 2> dg(Vec2 x) const { return dg_(x); }
  std::array<Mat2, 3> d2g(Vec2 x) const { return d2g_(x); }

  Christoffel christoffel(Vec2 x) const;          // validated
  Christoffel christoffel_raw(Vec2 x) const;      // hot path, no checks
  double gaussian_curvature(Vec2 x) const;        // Brioschi from g, dg, d2g

  double norm(Vec2 x, Vec2 v) const { return std::sqrt(g_(x).quad(v, v)); }
  double inner(Vec2 x, Vec2 u, Vec2 v) const { return g_(x).quad(u, v); }

  // Outward g-unit normal at a chart boundary point (|x| == chart radius).
  Vec2 outward_normal(Vec2 x) const;
  // g-orthonormal boundary frame: inward normal and tangent at angle s.
  void boundary_frame(double s, Vec2* point, Vec2* inward, Vec2* tangent) const;
  // Length element |dx/ds|_g of the boundary circle at angle s.
  double boundary_length_element(double s) const;

  // Same metric expressions on a disk enlarged by eps.
  MetricField extended(double eps) const;

 private:
  MetricField() = default;

  std::string name_;
  double chart_radius_ = 1.0;
  bool analytic_ = true;
  GFun g_;
  DGFun dg_;
  D2GFun d2g_;
  // Fast paths (set for conformal presets).
  std::function<Christoffel(Vec2)> christoffel_fn_;
  std::function<double(Vec2)> curvature_fn_;
};

// Parse a metric preset string from the experiment config, e.g. "euclidean",
// "conformal-linear:0.25", "gaussian-bump:0.15,0.5,0.3,0.0", "sphere:0.4".
MetricField make_metric(const std::string& preset, double chart_radius = 1.0);

}  // namespace geotomo
