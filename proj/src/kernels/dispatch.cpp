#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "carlab/kernels.hpp"

namespace carlab::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(CARLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  Isa isa = detected_isa();
  if (const char* env = std::getenv("CARLAB_ISA")) {
    const std::string want(env);
    if (want == "scalar") isa = Isa::scalar;
    else if (want == "avx2" && isa_available(Isa::avx2)) isa = Isa::avx2;
  }
  return isa;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table(initial_isa())};
  return slot;
}

std::atomic<Isa>& active_isa_slot() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernels: operand length mismatch");
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
  }
  return false;
}

Isa detected_isa() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() { return active_isa_slot().load(); }

const KernelTable& table(Isa isa) {
#if defined(CARLAB_HAVE_AVX2)
  if (isa == Isa::avx2) {
    if (!cpu_has_avx2()) throw std::runtime_error("kernels: AVX2 not available on this CPU");
    return avx2_table();
  }
#else
  if (isa == Isa::avx2) throw std::runtime_error("kernels: built without AVX2 support");
#endif
  return scalar_table();
}

void force_isa(Isa isa) {
  active_slot().store(&table(isa));
  active_isa_slot().store(isa);
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  check_sizes(x.size(), y.size());
  return active_slot().load()->dotc(x.data(), y.data(), x.size());
}

cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
  check_sizes(x.size(), y.size());
  return active_slot().load()->dotu(x.data(), y.data(), x.size());
}

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  check_sizes(x.size(), y.size());
  active_slot().load()->axpy(a, x.data(), y.data(), x.size());
}

void gemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a,
          std::span<const cplx> b, std::span<cplx> c) {
  check_sizes(a.size(), m * k);
  check_sizes(b.size(), k * n);
  check_sizes(c.size(), m * n);
  active_slot().load()->gemm(m, n, k, a.data(), b.data(), c.data());
}

}  // namespace carlab::kernels
