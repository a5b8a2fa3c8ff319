#include "carlab/superop.hpp"

#include <cmath>
#include <stdexcept>

namespace carlab {
namespace {

Eigen::Index vec_index(Eigen::Index row, Eigen::Index col, Eigen::Index d) { return row + col * d; }

}  // namespace

Eigen::Index superop_dim(const SuperoperatorMatrix& s) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  if (s.rows() != s.cols() || d * d != s.rows())
    throw std::invalid_argument("superoperator matrix must be d^2 x d^2");
  return d;
}

SuperoperatorMatrix identity_superop(Eigen::Index d) { return SuperoperatorMatrix::Identity(d * d, d * d); }

SuperoperatorMatrix transpose_superop(Eigen::Index d) {
  SuperoperatorMatrix s = SuperoperatorMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) s(vec_index(j, i, d), vec_index(i, j, d)) = 1.0;
  return s;
}

SuperoperatorMatrix heisenberg_from_kraus(std::span<const CMatrix> kraus) {
  if (kraus.empty()) throw std::invalid_argument("heisenberg_from_kraus: empty Kraus list");
  return compose_kraus_after(kraus, identity_superop(kraus.front().rows()));
}

SuperoperatorMatrix schrodinger_from_kraus(std::span<const CMatrix> kraus) {
  if (kraus.empty()) throw std::invalid_argument("schrodinger_from_kraus: empty Kraus list");
  const Eigen::Index d = kraus.front().rows();
  return superop_from_map(d, [&](const CMatrix& rho) {
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto& k : kraus) out += linalg::matmul(linalg::matmul(k, rho), k.adjoint());
    return out;
  });
}

SuperoperatorMatrix superop_from_map(Eigen::Index d, const std::function<CMatrix(const CMatrix&)>& map) {
  SuperoperatorMatrix s(d * d, d * d);
  CMatrix unit = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      unit(i, j) = 1.0;
      const CMatrix image = map(unit);
      if (image.rows() != d || image.cols() != d)
        throw std::invalid_argument("superop_from_map: map changes dimension");
      s.col(vec_index(i, j, d)) = image.reshaped();
      unit(i, j) = 0.0;
    }
  }
  return s;
}

CMatrix apply_superop(const SuperoperatorMatrix& s, const CMatrix& x) {
  const Eigen::Index d = superop_dim(s);
  if (x.rows() != d || x.cols() != d) throw std::invalid_argument("apply_superop: dimension mismatch");
  const CVector v = linalg::matvec(s, x.reshaped());
  return v.reshaped(d, d);
}

SuperoperatorMatrix compose_kraus_after(std::span<const CMatrix> kraus, const SuperoperatorMatrix& s) {
  const Eigen::Index d = superop_dim(s);
  SuperoperatorMatrix out = SuperoperatorMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("compose_kraus_after: Kraus size");
    const CMatrix kd = k.adjoint();
    for (Eigen::Index c = 0; c < d * d; ++c) {
      const CMatrix image = s.col(c).reshaped(d, d);
      const CMatrix next = linalg::matmul(linalg::matmul(kd, image), k);
      out.col(c) += next.reshaped();
    }
  }
  return out;
}

ChoiMatrix superop_to_choi(const SuperoperatorMatrix& s) {
  const Eigen::Index d = superop_dim(s);
  ChoiMatrix c(d * d, d * d);
  // C[(i,a),(j,b)] = S(E_ij)[a,b]
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          c(i * d + a, j * d + b) = s(vec_index(a, b, d), vec_index(i, j, d));
  return c;
}

double choi_min_eigenvalue(const SuperoperatorMatrix& s) {
  return linalg::min_eigenvalue_hermitian(superop_to_choi(s));
}

CpOrderVerdict cp_order_check(const SuperoperatorMatrix& a, const SuperoperatorMatrix& b, double tolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("cp_order_check: dimension mismatch");
  const double m = choi_min_eigenvalue(a - b);
  return {m >= tolerance, m};
}

}  // namespace carlab
