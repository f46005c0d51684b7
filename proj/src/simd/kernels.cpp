#include "geotomo/simd/kernels.hpp"

#include <cstdlib>

namespace geotomo::simd {

namespace {

struct Dispatch {
  const KernelTable* table;
  std::string name;
};

Dispatch resolve() {
  const char* env = std::getenv("GEOTOMO_SIMD");
  const std::string want = env ? env : "";
  if (want == "scalar") return {&kScalarKernels, "scalar"};
#if defined(__x86_64__) && defined(GEOTOMO_BUILD_AVX2)
  const bool has_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (want == "avx2") {
    if (has_avx2) return {&kAvx2Kernels, "avx2"};
    return {&kScalarKernels, "scalar"};
  }
  if (want.empty() && has_avx2) return {&kAvx2Kernels, "avx2"};
#endif
#if defined(__aarch64__) && defined(GEOTOMO_BUILD_NEON)
  if (want == "neon" || want.empty()) return {&kNeonKernels, "neon"};
#endif
  return {&kScalarKernels, "scalar"};
}

Dispatch& state() {
  static Dispatch d = resolve();
  return d;
}

}  // namespace

const KernelTable& kernels() { return *state().table; }

std::string active_backend() { return state().name; }

bool force_backend(const std::string& name) {
  if (name == "scalar") {
    state() = {&kScalarKernels, "scalar"};
    return true;
  }
#if defined(__x86_64__) && defined(GEOTOMO_BUILD_AVX2)
  if (name == "avx2" && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    state() = {&kAvx2Kernels, "avx2"};
    return true;
  }
#endif
#if defined(__aarch64__) && defined(GEOTOMO_BUILD_NEON)
  if (name == "neon") {
    state() = {&kNeonKernels, "neon"};
    return true;
  }
#endif
  return false;
}

}  // namespace geotomo::simd
