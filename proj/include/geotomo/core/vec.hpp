#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace geotomo {

using cd = std::complex<double>;

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  double operator[](int i) const { return i == 0 ? x : y; }

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Symmetric 2x2 matrix, the pointwise value of a metric tensor.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 1.0}; }

  double det() const { return a11 * a22 - a12 * a12; }
  Mat2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, a11 / d};
  }
  Vec2 apply(Vec2 v) const { return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y}; }
  double quad(Vec2 u, Vec2 v) const { return u.x * (a11 * v.x + a12 * v.y) + u.y * (a12 * v.x + a22 * v.y); }
  Mat2 operator*(double s) const { return {a11 * s, a12 * s, a22 * s}; }
  Mat2 operator+(Mat2 o) const { return {a11 + o.a11, a12 + o.a12, a22 + o.a22}; }
};

// Complex pair, the pointwise value of a vector or covector field.
struct CVec2 {
  cd x{0.0, 0.0}, y{0.0, 0.0};
  CVec2() = default;
  CVec2(cd x_, cd y_) : x(x_), y(y_) {}
  CVec2 operator+(CVec2 o) const { return {x + o.x, y + o.y}; }
  CVec2 operator-(CVec2 o) const { return {x - o.x, y - o.y}; }
  CVec2 operator*(cd s) const { return {x * s, y * s}; }
};

// <u, v> through a real metric value, no conjugation (matches the bilinear
// pairing used for complex covectors throughout).
inline cd metric_pair(const Mat2& g, CVec2 u, CVec2 v) {
  return u.x * (g.a11 * v.x + g.a12 * v.y) + u.y * (g.a12 * v.x + g.a22 * v.y);
}

}  // namespace geotomo
