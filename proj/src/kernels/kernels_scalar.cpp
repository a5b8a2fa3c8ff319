#include "carlab/kernels.hpp"

#include <algorithm>

namespace carlab::kernels {
namespace {

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

cplx dotu_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

void axpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
  }
}

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                 const cplx* b, cplx* c) {
  for (std::size_t j = 0; j < n; ++j) {
    cplx* cj = c + j * m;
    std::fill(cj, cj + m, cplx{});
    for (std::size_t l = 0; l < k; ++l) {
      const cplx blj = b[l + j * k];
      if (blj == cplx{}) continue;
      axpy_scalar(blj, a + l * m, cj, m);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{dotc_scalar, dotu_scalar, axpy_scalar, gemm_scalar};
  return t;
}

}  // namespace carlab::kernels
