#include "geotomo/simd/kernels.hpp"

namespace geotomo::simd {

namespace {

void s_zaxpy(std::size_t n, cd a, const cd* x, cd* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void s_zxpay(std::size_t n, cd a, const cd* x, cd* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void s_zscal(std::size_t n, cd a, cd* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cd s_zdotc(std::size_t n, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cd s_zdotu(std::size_t n, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

double s_znrm2sq(std::size_t n, const cd* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

cd s_zwdotc(std::size_t n, const double* w, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += w[i] * (x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
    im += w[i] * (x[i].real() * y[i].imag() - x[i].imag() * y[i].real());
  }
  return {re, im};
}

cd s_zwsum(std::size_t n, const double* w, const cd* x) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += w[i] * x[i].real();
    im += w[i] * x[i].imag();
  }
  return {re, im};
}

void s_zmuladd(std::size_t n, const cd* x, const cd* y, cd* z) {
  for (std::size_t i = 0; i < n; ++i) z[i] += x[i] * y[i];
}

void s_daxpy(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_ddot(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double s_dwdot(std::size_t n, const double* w, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable kScalarKernels = {
    s_zaxpy, s_zxpay, s_zscal, s_zdotc, s_zdotu, s_znrm2sq,
    s_zwdotc, s_zwsum, s_zmuladd, s_daxpy, s_ddot, s_dwdot,
};

}  // namespace geotomo::simd
