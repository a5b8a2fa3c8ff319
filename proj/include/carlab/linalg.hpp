#pragma once

#include <Eigen/Dense>
#include <complex>

namespace carlab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace linalg {

// Dense products routed through the dispatched GEMM kernel.
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CVector matvec(const CMatrix& a, const CVector& x);

cplx inner(const CVector& u, const CVector& v);  // conj(u) . v
// Tr(A B) without forming the product.
cplx trace_product(const CMatrix& a, const CMatrix& b);

double min_eigenvalue_hermitian(const CMatrix& a);  // of (A + A^H)/2
double max_eigenvalue_hermitian(const CMatrix& a);
double hermiticity_error(const CMatrix& a);  // max |A - A^H|
double operator_norm(const CMatrix& a);      // largest singular value
double trace_norm(const CMatrix& a);         // sum of singular values
cplx determinant(const CMatrix& a);

}  // namespace linalg
}  // namespace carlab
