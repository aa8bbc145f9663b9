#include "covmur/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace covmur::kernels {

const KernelSet& scalar() {
  static const KernelSet set{"scalar", &detail::gemm_scalar, &detail::axpy_scalar,
                             &detail::max_abs_diff_scalar};
  return set;
}

const KernelSet* avx2() {
#if defined(COVMUR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelSet set{"avx2", &detail::gemm_avx2, &detail::axpy_avx2,
                             &detail::max_abs_diff_avx2};
  return supported ? &set : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = []() -> const KernelSet& {
    const char* forced = std::getenv("COVMUR_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar();
    if (const KernelSet* wide = avx2()) return *wide;
    return scalar();
  }();
  return chosen;
}

}  // namespace covmur::kernels
