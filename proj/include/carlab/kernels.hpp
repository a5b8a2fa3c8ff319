#pragma once

// Complex-double inner-loop kernels with a scalar reference and SIMD variants.
//
// Every variant implements the same contract and is checked against the scalar
// path in tests/unit/test_kernels.cpp. The active variant is picked once at
// startup from CPU features; CARLAB_ISA=scalar|avx2 overrides the choice.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace carlab::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i x_i * y_i
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  // y += a * x
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // C = A * B, column-major, A is m x k, B is k x n, C is m x n (overwritten)
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c);
};

const KernelTable& scalar_table();
#if defined(CARLAB_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

bool isa_available(Isa isa);
Isa detected_isa();
Isa active_isa();
// Switches the process-wide variant; throws if the ISA is unavailable.
void force_isa(Isa isa);
const KernelTable& table(Isa isa);
std::string_view isa_name(Isa isa);

cplx dotc(std::span<const cplx> x, std::span<const cplx> y);
cplx dotu(std::span<const cplx> x, std::span<const cplx> y);
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);
void gemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a,
          std::span<const cplx> b, std::span<cplx> c);

}  // namespace carlab::kernels
