#include "covmur/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace covmur::kernels::detail {
namespace {

// Two complex values per register: [re0, im0, re1, im1].
inline __m256d cmul_broadcast(__m256d a, __m256d br, __m256d bi) {
  const __m256d swapped = _mm256_permute_pd(a, 0b0101);
  return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(swapped, bi));
}

inline void cmadd_tail(cplx a, cplx b, cplx& c) {
  const double re = a.real() * b.real() - a.imag() * b.imag();
  const double im = a.imag() * b.real() + a.real() * b.imag();
  c = cplx{c.real() + re, c.imag() + im};
}

void axpy_kernel(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  const __m256d br = _mm256_set1_pd(alpha.real());
  const __m256d bi = _mm256_set1_pd(alpha.imag());
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * i);
    _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(yv, cmul_broadcast(xv, br, bi)));
  }
  for (; i < len; ++i) cmadd_tail(x[i], alpha, y[i]);
}

}  // namespace

void gemm_avx2(int n, const cplx* a, const cplx* b, cplx* c) {
  const std::size_t dim = static_cast<std::size_t>(n);
  std::fill(c, c + dim * dim, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) {
      axpy_kernel(dim, b[j * dim + k], a + k * dim, c + j * dim);
    }
  }
}

void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  axpy_kernel(len, alpha, x, y);
}

double max_abs_diff_avx2(std::size_t len, const cplx* x, const cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  __m256d worst = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + 2 * i), _mm256_loadu_pd(ys + 2 * i));
    const __m256d sq = _mm256_mul_pd(d, d);
    const __m256d mod = _mm256_sqrt_pd(_mm256_hadd_pd(sq, sq));
    worst = _mm256_max_pd(worst, mod);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, worst);
  double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < len; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    result = std::max(result, std::sqrt(dr * dr + di * di));
  }
  return result;
}

}  // namespace covmur::kernels::detail
