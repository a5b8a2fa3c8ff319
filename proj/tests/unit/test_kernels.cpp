#include <doctest.h>

#include <random>
#include <tuple>
#include <vector>

#include "carlab/kernels.hpp"

using namespace carlab::kernels;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n, double zero_fraction = 0.0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  std::vector<cplx> v(n);
  for (auto& x : v) {
    const double re = g(rng);
    x = u(rng) < zero_fraction ? cplx{} : cplx(re, g(rng));
  }
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Naive triple loop, independent of both kernel tables.
std::vector<cplx> gemm_oracle(std::size_t m, std::size_t n, std::size_t k, const std::vector<cplx>& a,
                              const std::vector<cplx>& b) {
  std::vector<cplx> c(m * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      cplx s{};
      for (std::size_t l = 0; l < k; ++l) s += a[i + l * m] * b[l + j * k];
      c[i + j * m] = s;
    }
  return c;
}

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u}) {
    auto x = random_vec(rng, n), y = random_vec(rng, n);
    cplx dc{}, du{};
    for (std::size_t i = 0; i < n; ++i) {
      dc += std::conj(x[i]) * y[i];
      du += x[i] * y[i];
    }
    const auto& t = scalar_table();
    CHECK(std::abs(t.dotc(x.data(), y.data(), n) - dc) <= 1e-12 * (1 + std::abs(dc)));
    CHECK(std::abs(t.dotu(x.data(), y.data(), n) - du) <= 1e-12 * (1 + std::abs(du)));
  }
  for (auto [m, n, k] : {std::tuple{1u, 1u, 1u}, std::tuple{5u, 3u, 7u}, std::tuple{8u, 8u, 8u}}) {
    auto a = random_vec(rng, m * k), b = random_vec(rng, k * n);
    std::vector<cplx> c(m * n, cplx(9.0));
    scalar_table().gemm(m, n, k, a.data(), b.data(), c.data());
    CHECK(max_diff(c, gemm_oracle(m, n, k, a, b)) <= 1e-12);
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 not available on this machine; equivalence test skipped");
    return;
  }
  const auto& s = table(Isa::scalar);
  const auto& v = table(Isa::avx2);
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n < 40; ++n) {
    auto x = random_vec(rng, n), y = random_vec(rng, n);
    const double scale = 1.0 + n;
    CHECK(std::abs(s.dotc(x.data(), y.data(), n) - v.dotc(x.data(), y.data(), n)) <= 1e-13 * scale);
    CHECK(std::abs(s.dotu(x.data(), y.data(), n) - v.dotu(x.data(), y.data(), n)) <= 1e-13 * scale);
    auto y1 = y, y2 = y;
    s.axpy(cplx(0.3, -1.1), x.data(), y1.data(), n);
    v.axpy(cplx(0.3, -1.1), x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) <= 1e-14);
  }
  for (double zeros : {0.0, 0.7, 0.97}) {
    for (auto [m, n, k] : {std::tuple{1u, 1u, 1u}, std::tuple{3u, 5u, 2u}, std::tuple{9u, 7u, 13u},
                           std::tuple{16u, 16u, 16u}, std::tuple{33u, 5u, 17u}}) {
      auto a = random_vec(rng, m * k, zeros), b = random_vec(rng, k * n, zeros);
      std::vector<cplx> c1(m * n, cplx(5.0)), c2(m * n, cplx(-5.0));
      s.gemm(m, n, k, a.data(), b.data(), c1.data());
      v.gemm(m, n, k, a.data(), b.data(), c2.data());
      CHECK(max_diff(c1, c2) <= 1e-12);
      CHECK(max_diff(c2, gemm_oracle(m, n, k, a, b)) <= 1e-12);
    }
  }
}

TEST_CASE("force_isa switches the dispatch table") {
  const Isa before = active_isa();
  force_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  std::vector<cplx> x{cplx(1, 2), cplx(3, -1)};
  CHECK(dotc(x, x) == cplx(15.0, 0.0));
  if (isa_available(Isa::avx2)) {
    force_isa(Isa::avx2);
    CHECK(active_isa() == Isa::avx2);
    CHECK(std::abs(dotc(x, x) - cplx(15.0, 0.0)) < 1e-15);
  } else {
    CHECK_THROWS(force_isa(Isa::avx2));
  }
  force_isa(before);
  CHECK(isa_name(Isa::scalar) == "scalar");
}
