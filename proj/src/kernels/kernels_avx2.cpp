// AVX2/FMA variants. Compiled with -mavx2 -mfma; only called after a runtime
// CPU feature check. Two complex doubles per 256-bit register, interleaved
// (re, im) exactly as std::complex<double> lays them out.

#include <immintrin.h>

#include <algorithm>

#include "carlab/kernels.hpp"

namespace carlab::kernels {
namespace {

inline const double* as_double(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_double(cplx* p) { return reinterpret_cast<double*>(p); }

inline double hsum_even(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[0] + t[2];
}
inline double hsum_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[1] + t[3];
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  // acc_a lanes: (xr*yr, xi*yi), acc_b lanes: (xr*yi, xi*yr)
  __m256d acc_a0 = _mm256_setzero_pd(), acc_a1 = _mm256_setzero_pd();
  __m256d acc_b0 = _mm256_setzero_pd(), acc_b1 = _mm256_setzero_pd();
  const double* xd = as_double(x);
  const double* yd = as_double(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(xd + 2 * i + 4);
    const __m256d y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    acc_a0 = _mm256_fmadd_pd(x0, y0, acc_a0);
    acc_a1 = _mm256_fmadd_pd(x1, y1, acc_a1);
    acc_b0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), acc_b0);
    acc_b1 = _mm256_fmadd_pd(x1, _mm256_permute_pd(y1, 0x5), acc_b1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    acc_a0 = _mm256_fmadd_pd(x0, y0, acc_a0);
    acc_b0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), acc_b0);
  }
  const __m256d acc_a = _mm256_add_pd(acc_a0, acc_a1);
  const __m256d acc_b = _mm256_add_pd(acc_b0, acc_b1);
  double re = hsum_even(acc_a) + hsum_odd(acc_a);
  double im = hsum_even(acc_b) - hsum_odd(acc_b);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_a0 = _mm256_setzero_pd(), acc_a1 = _mm256_setzero_pd();
  __m256d acc_b0 = _mm256_setzero_pd(), acc_b1 = _mm256_setzero_pd();
  const double* xd = as_double(x);
  const double* yd = as_double(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(xd + 2 * i + 4);
    const __m256d y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    acc_a0 = _mm256_fmadd_pd(x0, y0, acc_a0);
    acc_a1 = _mm256_fmadd_pd(x1, y1, acc_a1);
    acc_b0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), acc_b0);
    acc_b1 = _mm256_fmadd_pd(x1, _mm256_permute_pd(y1, 0x5), acc_b1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    acc_a0 = _mm256_fmadd_pd(x0, y0, acc_a0);
    acc_b0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), acc_b0);
  }
  const __m256d acc_a = _mm256_add_pd(acc_a0, acc_a1);
  const __m256d acc_b = _mm256_add_pd(acc_b0, acc_b1);
  double re = hsum_even(acc_a) - hsum_odd(acc_a);
  double im = hsum_even(acc_b) + hsum_odd(acc_b);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

// a * x for two packed complex values: fmaddsub(ar, x, ai * swap(x))
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d x) {
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, _mm256_permute_pd(x, 0x5)));
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xd = as_double(x);
  double* yd = as_double(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_bcast(ar, ai, xv)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

// Column sweep with four rank-1 updates fused per pass over C(:, j).
void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c) {
  for (std::size_t j = 0; j < n; ++j) {
    cplx* cj = c + j * m;
    std::fill(cj, cj + m, cplx{});
    double* cd = as_double(cj);
    const cplx* bj = b + j * k;
    std::size_t l = 0;
    for (; l + 4 <= k; l += 4) {
      if (bj[l] == cplx{} && bj[l + 1] == cplx{} && bj[l + 2] == cplx{} && bj[l + 3] == cplx{})
        continue;
      const __m256d br0 = _mm256_set1_pd(bj[l].real()), bi0 = _mm256_set1_pd(bj[l].imag());
      const __m256d br1 = _mm256_set1_pd(bj[l + 1].real()), bi1 = _mm256_set1_pd(bj[l + 1].imag());
      const __m256d br2 = _mm256_set1_pd(bj[l + 2].real()), bi2 = _mm256_set1_pd(bj[l + 2].imag());
      const __m256d br3 = _mm256_set1_pd(bj[l + 3].real()), bi3 = _mm256_set1_pd(bj[l + 3].imag());
      const double* a0 = as_double(a + l * m);
      const double* a1 = as_double(a + (l + 1) * m);
      const double* a2 = as_double(a + (l + 2) * m);
      const double* a3 = as_double(a + (l + 3) * m);
      std::size_t i = 0;
      for (; i + 2 <= m; i += 2) {
        __m256d acc = _mm256_loadu_pd(cd + 2 * i);
        acc = _mm256_add_pd(acc, cmul_bcast(br0, bi0, _mm256_loadu_pd(a0 + 2 * i)));
        acc = _mm256_add_pd(acc, cmul_bcast(br1, bi1, _mm256_loadu_pd(a1 + 2 * i)));
        acc = _mm256_add_pd(acc, cmul_bcast(br2, bi2, _mm256_loadu_pd(a2 + 2 * i)));
        acc = _mm256_add_pd(acc, cmul_bcast(br3, bi3, _mm256_loadu_pd(a3 + 2 * i)));
        _mm256_storeu_pd(cd + 2 * i, acc);
      }
      for (; i < m; ++i) {
        cj[i] += bj[l] * a[i + l * m] + bj[l + 1] * a[i + (l + 1) * m] +
                 bj[l + 2] * a[i + (l + 2) * m] + bj[l + 3] * a[i + (l + 3) * m];
      }
    }
    for (; l < k; ++l) {
      if (bj[l] == cplx{}) continue;
      axpy_avx2(bj[l], a + l * m, cj, m);
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{dotc_avx2, dotu_avx2, axpy_avx2, gemm_avx2};
  return t;
}

}  // namespace carlab::kernels
