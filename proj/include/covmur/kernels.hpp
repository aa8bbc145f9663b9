#pragma once

// Complex double inner loops used by conjugation, group averaging and
// defect measurement. A scalar reference set is always available; an AVX2+FMA
// set is compiled on x86-64 and chosen at runtime when the CPU supports it.
//
// All matrices are square, column-major, stored as interleaved (re, im).
// Setting COVMUR_SIMD=scalar in the environment forces the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace covmur::kernels {

using cplx = std::complex<double>;

struct KernelSet {
  std::string_view name;
  // c = a * b, all n x n. c must not alias a or b.
  void (*gemm)(int n, const cplx* a, const cplx* b, cplx* c);
  // y += alpha * x
  void (*axpy)(std::size_t len, cplx alpha, const cplx* x, cplx* y);
  // max_i |x_i - y_i|
  double (*max_abs_diff)(std::size_t len, const cplx* x, const cplx* y);
};

const KernelSet& scalar();

// nullptr when not compiled in or not supported by this CPU.
const KernelSet* avx2();

// Selected once per process.
const KernelSet& active();

namespace detail {
void gemm_scalar(int n, const cplx* a, const cplx* b, cplx* c);
void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y);
double max_abs_diff_scalar(std::size_t len, const cplx* x, const cplx* y);
#if defined(COVMUR_HAVE_AVX2)
void gemm_avx2(int n, const cplx* a, const cplx* b, cplx* c);
void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y);
double max_abs_diff_avx2(std::size_t len, const cplx* x, const cplx* y);
#endif
}  // namespace detail

}  // namespace covmur::kernels
