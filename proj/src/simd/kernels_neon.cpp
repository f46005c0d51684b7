#include "geotomo/simd/kernels.hpp"

#ifdef __aarch64__
#include <arm_neon.h>

namespace geotomo::simd {

namespace {

// One float64x2_t holds a single complex double [re, im].

void n_zaxpy(std::size_t n, cd a, const cd* x, cd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const float64x2_t ai_swap = {-a.imag(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    float64x2_t yv = vld1q_f64(yp + 2 * i);
    yv = vfmaq_f64(yv, ar, xv);
    yv = vfmaq_f64(yv, ai_swap, vextq_f64(xv, xv, 1));
    vst1q_f64(yp + 2 * i, yv);
  }
}

void n_zxpay(std::size_t n, cd a, const cd* x, cd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const float64x2_t ai_swap = {-a.imag(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    float64x2_t yv = vld1q_f64(yp + 2 * i);
    float64x2_t t = vfmaq_f64(xv, ar, yv);
    t = vfmaq_f64(t, ai_swap, vextq_f64(yv, yv, 1));
    vst1q_f64(yp + 2 * i, t);
  }
}

void n_zscal(std::size_t n, cd a, cd* x) {
  double* xp = reinterpret_cast<double*>(x);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const float64x2_t ai_swap = {-a.imag(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t xv = vld1q_f64(xp + 2 * i);
    float64x2_t t = vmulq_f64(ar, xv);
    t = vfmaq_f64(t, ai_swap, vextq_f64(xv, xv, 1));
    vst1q_f64(xp + 2 * i, t);
  }
}

cd n_zdotc(std::size_t n, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cd n_zdotu(std::size_t n, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

double n_znrm2sq(std::size_t n, const cd* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t v = vld1q_f64(xp + 2 * i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

cd n_zwdotc(std::size_t n, const double* w, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += w[i] * (x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
    im += w[i] * (x[i].real() * y[i].imag() - x[i].imag() * y[i].real());
  }
  return {re, im};
}

cd n_zwsum(std::size_t n, const double* w, const cd* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i)
    acc = vfmaq_f64(acc, vdupq_n_f64(w[i]), vld1q_f64(xp + 2 * i));
  return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

void n_zmuladd(std::size_t n, const cd* x, const cd* y, cd* z) {
  for (std::size_t i = 0; i < n; ++i) z[i] += x[i] * y[i];
}

void n_daxpy(std::size_t n, double a, const double* x, double* y) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

double n_ddot(std::size_t n, const double* x, const double* y) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double n_dwdot(std::size_t n, const double* w, const double* x, const double* y) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
    acc = vfmaq_f64(acc, vld1q_f64(w + i), t);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable kNeonKernels = {
    n_zaxpy, n_zxpay, n_zscal, n_zdotc, n_zdotu, n_znrm2sq,
    n_zwdotc, n_zwsum, n_zmuladd, n_daxpy, n_ddot, n_dwdot,
};

}  // namespace geotomo::simd

#endif  // __aarch64__
