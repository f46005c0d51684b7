#include "geotomo/simd/kernels.hpp"

#ifdef __x86_64__
#include <immintrin.h>

namespace geotomo::simd {

namespace {

// Lane layout: one __m256d holds two complex doubles [re0, im0, re1, im1].

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_pd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// [0, -0, 0, -0]: xor flips the sign of the odd (imaginary) lanes.
inline __m256d odd_sign_mask() { return _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); }

inline __m256d widen_weights(const double* w) {
  __m128d wm = _mm_loadu_pd(w);
  return _mm256_insertf128_pd(_mm256_castpd128_pd256(_mm_unpacklo_pd(wm, wm)),
                              _mm_unpackhi_pd(wm, wm), 1);
}

void a_zaxpy(std::size_t n, cd a, const cd* x, cd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    __m256d t = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_pairs(xv)));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, t));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void a_zxpay(std::size_t n, cd a, const cd* x, cd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    __m256d t = _mm256_fmaddsub_pd(ar, yv, _mm256_mul_pd(ai, swap_pairs(yv)));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(xv, t));
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void a_zscal(std::size_t n, cd a, cd* x) {
  double* xp = reinterpret_cast<double*>(x);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d t = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_pairs(xv)));
    _mm256_storeu_pd(xp + 2 * i, t);
  }
  for (; i < n; ++i) x[i] *= a;
}

cd a_zdotc(std::size_t n, const cd* x, const cd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m256d sgn = odd_sign_mask();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_xor_pd(swap_pairs(yv), sgn), acc_im);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cd a_zdotu(std::size_t n, const cd* x, const cd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m256d sgn = odd_sign_mask();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, _mm256_xor_pd(yv, sgn), acc_re);
    acc_im = _mm256_fmadd_pd(xv, swap_pairs(yv), acc_im);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

double a_znrm2sq(std::size_t n, const cd* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d v1 = _mm256_loadu_pd(xp + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

cd a_zwdotc(std::size_t n, const double* w, const cd* x, const cd* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m256d sgn = odd_sign_mask();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d wv = widen_weights(w + i);
    __m256d xv = _mm256_mul_pd(wv, _mm256_loadu_pd(xp + 2 * i));
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_xor_pd(swap_pairs(yv), sgn), acc_im);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (; i < n; ++i) {
    re += w[i] * (x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
    im += w[i] * (x[i].real() * y[i].imag() - x[i].imag() * y[i].real());
  }
  return {re, im};
}

cd a_zwsum(std::size_t n, const double* w, const cd* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d wv = widen_weights(w + i);
    acc = _mm256_fmadd_pd(wv, _mm256_loadu_pd(xp + 2 * i), acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  double re = _mm_cvtsd_f64(s);
  double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; i < n; ++i) {
    re += w[i] * x[i].real();
    im += w[i] * x[i].imag();
  }
  return {re, im};
}

void a_zmuladd(std::size_t n, const cd* x, const cd* y, cd* z) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  double* zp = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    __m256d xr = _mm256_movedup_pd(xv);
    __m256d xi = _mm256_permute_pd(xv, 0b1111);
    __m256d t = _mm256_fmaddsub_pd(xr, yv, _mm256_mul_pd(xi, swap_pairs(yv)));
    _mm256_storeu_pd(zp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(zp + 2 * i), t));
  }
  for (; i < n; ++i) z[i] += x[i] * y[i];
}

void a_daxpy(std::size_t n, double a, const double* x, double* y) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double a_ddot(std::size_t n, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double a_dwdot(std::size_t n, const double* w, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), t, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable kAvx2Kernels = {
    a_zaxpy, a_zxpay, a_zscal, a_zdotc, a_zdotu, a_znrm2sq,
    a_zwdotc, a_zwsum, a_zmuladd, a_daxpy, a_ddot, a_dwdot,
};

}  // namespace geotomo::simd

#endif  // __x86_64__
