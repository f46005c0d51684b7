#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace geotomo::simd {

using cd = std::complex<double>;

// Dense vector kernels behind the solvers, quadratures and correlations.
// Every entry has a scalar reference implementation and, where the host CPU
// supports it, a vectorized variant selected once at startup. All reductions
// run in a fixed order for a given backend, so repeated runs are bitwise
// reproducible on the same machine/configuration.
struct KernelTable {
  // y[i] += a * x[i]
  void (*zaxpy)(std::size_t n, cd a, const cd* x, cd* y);
  // y[i] = x[i] + a * y[i]
  void (*zxpay)(std::size_t n, cd a, const cd* x, cd* y);
  // x[i] *= a
  void (*zscal)(std::size_t n, cd a, cd* x);
  // sum conj(x[i]) * y[i]
  cd (*zdotc)(std::size_t n, const cd* x, const cd* y);
  // sum x[i] * y[i]
  cd (*zdotu)(std::size_t n, const cd* x, const cd* y);
  // sum |x[i]|^2
  double (*znrm2sq)(std::size_t n, const cd* x);
  // sum w[i] * conj(x[i]) * y[i], real weights
  cd (*zwdotc)(std::size_t n, const double* w, const cd* x, const cd* y);
  // sum w[i] * x[i]
  cd (*zwsum)(std::size_t n, const double* w, const cd* x);
  // z[i] += x[i] * y[i]
  void (*zmuladd)(std::size_t n, const cd* x, const cd* y, cd* z);
  // y[i] += a * x[i], real
  void (*daxpy)(std::size_t n, double a, const double* x, double* y);
  // sum x[i] * y[i], real
  double (*ddot)(std::size_t n, const double* x, const double* y);
  // sum w[i] * x[i] * y[i], real
  double (*dwdot)(std::size_t n, const double* w, const double* x, const double* y);
};

extern const KernelTable kScalarKernels;
#ifdef __x86_64__
extern const KernelTable kAvx2Kernels;
#endif
#ifdef __aarch64__
extern const KernelTable kNeonKernels;
#endif

// Active table; resolved on first use (or via force_backend / the
// GEOTOMO_SIMD environment variable, values "scalar", "avx2", "neon").
const KernelTable& kernels();
std::string active_backend();
bool force_backend(const std::string& name);  // false if unavailable

}  // namespace geotomo::simd
