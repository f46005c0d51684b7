#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "geotomo/simd/kernels.hpp"

using geotomo::simd::cd;
using geotomo::simd::KernelTable;

namespace {

struct Arrays {
  std::vector<cd> x, y, z;
  std::vector<double> w, rx, ry;
};

Arrays random_arrays(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Arrays a;
  a.x.resize(n);
  a.y.resize(n);
  a.z.resize(n);
  a.w.resize(n);
  a.rx.resize(n);
  a.ry.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.x[i] = {u(rng), u(rng)};
    a.y[i] = {u(rng), u(rng)};
    a.z[i] = {u(rng), u(rng)};
    a.w[i] = u(rng) + 2.0;
    a.rx[i] = u(rng);
    a.ry[i] = u(rng);
  }
  return a;
}

void check_close(cd a, cd b, double tol) {
  CHECK(std::abs(a - b) <= tol * (1.0 + std::abs(a)));
}

// Every backend must agree with the scalar reference on random data.
void equivalence(const KernelTable& ref, const KernelTable& alt, std::size_t n, unsigned seed) {
  Arrays a = random_arrays(n, seed);
  const cd alpha{0.37, -1.21};
  const double tol = 1e-12 * static_cast<double>(n + 1);

  check_close(ref.zdotc(n, a.x.data(), a.y.data()), alt.zdotc(n, a.x.data(), a.y.data()), tol);
  check_close(ref.zdotu(n, a.x.data(), a.y.data()), alt.zdotu(n, a.x.data(), a.y.data()), tol);
  CHECK(ref.znrm2sq(n, a.x.data()) == doctest::Approx(alt.znrm2sq(n, a.x.data())).epsilon(1e-13));
  check_close(ref.zwdotc(n, a.w.data(), a.x.data(), a.y.data()),
              alt.zwdotc(n, a.w.data(), a.x.data(), a.y.data()), tol);
  check_close(ref.zwsum(n, a.w.data(), a.x.data()), alt.zwsum(n, a.w.data(), a.x.data()), tol);
  CHECK(ref.ddot(n, a.rx.data(), a.ry.data()) ==
        doctest::Approx(alt.ddot(n, a.rx.data(), a.ry.data())).epsilon(1e-12));
  CHECK(ref.dwdot(n, a.w.data(), a.rx.data(), a.ry.data()) ==
        doctest::Approx(alt.dwdot(n, a.w.data(), a.rx.data(), a.ry.data())).epsilon(1e-12));

  std::vector<cd> y1 = a.y, y2 = a.y;
  ref.zaxpy(n, alpha, a.x.data(), y1.data());
  alt.zaxpy(n, alpha, a.x.data(), y2.data());
  for (std::size_t i = 0; i < n; ++i) check_close(y1[i], y2[i], 1e-14);

  y1 = a.y;
  y2 = a.y;
  ref.zxpay(n, alpha, a.x.data(), y1.data());
  alt.zxpay(n, alpha, a.x.data(), y2.data());
  for (std::size_t i = 0; i < n; ++i) check_close(y1[i], y2[i], 1e-14);

  y1 = a.y;
  y2 = a.y;
  ref.zscal(n, alpha, y1.data());
  alt.zscal(n, alpha, y2.data());
  for (std::size_t i = 0; i < n; ++i) check_close(y1[i], y2[i], 1e-14);

  std::vector<cd> z1 = a.z, z2 = a.z;
  ref.zmuladd(n, a.x.data(), a.y.data(), z1.data());
  alt.zmuladd(n, a.x.data(), a.y.data(), z2.data());
  for (std::size_t i = 0; i < n; ++i) check_close(z1[i], z2[i], 1e-14);

  std::vector<double> r1 = a.ry, r2 = a.ry;
  ref.daxpy(n, 0.77, a.rx.data(), r1.data());
  alt.daxpy(n, 0.77, a.rx.data(), r2.data());
  for (std::size_t i = 0; i < n; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-14));
}

}  // namespace

TEST_CASE("scalar reference sanity") {
  const KernelTable& k = geotomo::simd::kScalarKernels;
  std::vector<cd> x{{1.0, 2.0}, {3.0, -1.0}};
  std::vector<cd> y{{0.5, 0.0}, {0.0, 1.0}};
  // conj(x) . y = (1-2i)(0.5) + (3+i)(i) = 0.5 - i + 3i - 1 = -0.5 + 2i
  check_close(k.zdotc(2, x.data(), y.data()), cd{-0.5, 2.0}, 1e-15);
  // x . y = (1+2i)(0.5) + (3-i)(i) = 0.5 + i + 3i + 1 = 1.5 + 4i
  check_close(k.zdotu(2, x.data(), y.data()), cd{1.5, 4.0}, 1e-15);
  CHECK(k.znrm2sq(2, x.data()) == doctest::Approx(15.0));
}

TEST_CASE("backends agree with the scalar reference") {
  for (std::size_t n : {0ul, 1ul, 2ul, 3ul, 7ul, 64ul, 1001ul}) {
#ifdef __x86_64__
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
      equivalence(geotomo::simd::kScalarKernels, geotomo::simd::kAvx2Kernels, n, 42u + n);
#endif
#ifdef __aarch64__
    equivalence(geotomo::simd::kScalarKernels, geotomo::simd::kNeonKernels, n, 42u + n);
#endif
    equivalence(geotomo::simd::kScalarKernels, geotomo::simd::kScalarKernels, n, 42u + n);
  }
}

TEST_CASE("runtime dispatch override") {
  CHECK(geotomo::simd::force_backend("scalar"));
  CHECK(geotomo::simd::active_backend() == "scalar");
#ifdef __x86_64__
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    CHECK(geotomo::simd::force_backend("avx2"));
    CHECK(geotomo::simd::active_backend() == "avx2");
  }
#endif
  CHECK_FALSE(geotomo::simd::force_backend("no-such-backend"));
}
