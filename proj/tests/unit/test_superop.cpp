#include <doctest.h>

#include "carlab/superop.hpp"

using namespace carlab;

TEST_CASE("superoperators from Kraus maps act like the maps") {
  const int d = 3;
  std::vector<CMatrix> k{CMatrix::Random(d, d), CMatrix::Random(d, d)};
  const CMatrix x = CMatrix::Random(d, d);
  CMatrix heis = CMatrix::Zero(d, d), schr = CMatrix::Zero(d, d);
  for (const auto& m : k) {
    heis += m.adjoint() * x * m;
    schr += m * x * m.adjoint();
  }
  CHECK((apply_superop(heisenberg_from_kraus(k), x) - heis).norm() < 1e-13);
  CHECK((apply_superop(schrodinger_from_kraus(k), x) - schr).norm() < 1e-13);
  const auto fn = superop_from_map(d, [&](const CMatrix& y) { return CMatrix(y.transpose()); });
  CHECK((fn - transpose_superop(d)).norm() < 1e-15);
  CHECK(superop_dim(identity_superop(d)) == d);
  CHECK((apply_superop(identity_superop(d), x) - x).norm() == 0.0);
}

TEST_CASE("Choi matrix classifies positivity") {
  const int d = 3;
  CHECK(choi_min_eigenvalue(identity_superop(d)) > -1e-14);
  CHECK(std::abs(choi_min_eigenvalue(transpose_superop(d)) + 1.0) < 1e-12);
  // Choi of the identity is the unnormalized maximally entangled projector
  const ChoiMatrix c = superop_to_choi(identity_superop(d));
  CHECK(std::abs(c.trace() - cplx(d)) < 1e-14);
  CHECK(std::abs(linalg::max_eigenvalue_hermitian(c) - d) < 1e-12);
  std::vector<CMatrix> k{CMatrix::Random(d, d)};
  const auto a = heisenberg_from_kraus(k);
  CHECK(cp_order_check(a, CMatrix::Zero(d * d, d * d)).holds);
  CHECK_FALSE(cp_order_check(CMatrix::Zero(d * d, d * d), a).holds);
  CHECK(cp_order_check(a, a).holds);
}

TEST_CASE("composition with a Kraus family") {
  const int d = 2;
  std::vector<CMatrix> k{CMatrix::Random(d, d)};
  const auto t = transpose_superop(d);
  const CMatrix x = CMatrix::Random(d, d);
  const CMatrix expect = k[0].adjoint() * x.transpose() * k[0];
  CHECK((apply_superop(compose_kraus_after(k, t), x) - expect).norm() < 1e-13);
}
