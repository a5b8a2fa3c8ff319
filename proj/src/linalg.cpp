#include "carlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "carlab/kernels.hpp"

namespace carlab::linalg {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
  CMatrix c(a.rows(), b.cols());
  const auto m = static_cast<std::size_t>(a.rows());
  const auto n = static_cast<std::size_t>(b.cols());
  const auto k = static_cast<std::size_t>(a.cols());
  kernels::gemm(m, n, k, {a.data(), m * k}, {b.data(), k * n}, {c.data(), m * n});
  return c;
}

CVector matvec(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  CVector y = CVector::Zero(a.rows());
  const auto m = static_cast<std::size_t>(a.rows());
  for (Eigen::Index l = 0; l < a.cols(); ++l) {
    if (x[l] == cplx{}) continue;
    kernels::axpy(x[l], {a.col(l).data(), m}, {y.data(), m});
  }
  return y;
}

cplx inner(const CVector& u, const CVector& v) {
  return kernels::dotc({u.data(), static_cast<std::size_t>(u.size())},
                       {v.data(), static_cast<std::size_t>(v.size())});
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_product: shape mismatch");
  // Tr(AB) = vec(A) . vec(B^T)
  const CMatrix bt = b.transpose();
  const auto n = static_cast<std::size_t>(a.size());
  return kernels::dotu({a.data(), n}, {bt.data(), n});
}

double min_eigenvalue_hermitian(const CMatrix& a) {
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue_hermitian(const CMatrix& a) {
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double hermiticity_error(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  const CMatrix g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

cplx determinant(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (a.rows() == 0) return 1.0;
  return a.partialPivLu().determinant();
}

}  // namespace carlab::linalg
