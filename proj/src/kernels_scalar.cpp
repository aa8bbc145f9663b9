#include "covmur/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace covmur::kernels::detail {

void gemm_scalar(int n, const cplx* a, const cplx* b, cplx* c) {
  const std::size_t dim = static_cast<std::size_t>(n);
  std::fill(c, c + dim * dim, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < dim; ++j) {
    cplx* cj = c + j * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      const cplx bkj = b[j * dim + k];
      const cplx* ak = a + k * dim;
      for (std::size_t i = 0; i < dim; ++i) {
        // spelled out so the reference does not depend on the library's
        // complex multiply (which adds inf/nan recovery branches)
        const double re = ak[i].real() * bkj.real() - ak[i].imag() * bkj.imag();
        const double im = ak[i].imag() * bkj.real() + ak[i].real() * bkj.imag();
        cj[i] = cplx{cj[i].real() + re, cj[i].imag() + im};
      }
    }
  }
}

void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < len; ++i) {
    const double re = x[i].real() * alpha.real() - x[i].imag() * alpha.imag();
    const double im = x[i].imag() * alpha.real() + x[i].real() * alpha.imag();
    y[i] = cplx{y[i].real() + re, y[i].imag() + im};
  }
}

double max_abs_diff_scalar(std::size_t len, const cplx* x, const cplx* y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    worst = std::max(worst, std::sqrt(dr * dr + di * di));
  }
  return worst;
}

}  // namespace covmur::kernels::detail
