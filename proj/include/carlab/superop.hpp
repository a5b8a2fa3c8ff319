#pragma once

// Superoperators on d x d matrices as d^2 x d^2 matrices acting on column-major
// vec(x). Heisenberg maps x -> sum K^+ x K and Schroedinger maps
// rho -> sum K rho K^+ are both carried this way; the tag is the caller's.

#include <functional>
#include <span>

#include "carlab/linalg.hpp"

namespace carlab {

using SuperoperatorMatrix = CMatrix;
using ChoiMatrix = CMatrix;

SuperoperatorMatrix identity_superop(Eigen::Index d);
SuperoperatorMatrix transpose_superop(Eigen::Index d);
// x -> sum K^+ x K
SuperoperatorMatrix heisenberg_from_kraus(std::span<const CMatrix> kraus);
// rho -> sum K rho K^+
SuperoperatorMatrix schrodinger_from_kraus(std::span<const CMatrix> kraus);
SuperoperatorMatrix superop_from_map(Eigen::Index d, const std::function<CMatrix(const CMatrix&)>& map);

Eigen::Index superop_dim(const SuperoperatorMatrix& s);
CMatrix apply_superop(const SuperoperatorMatrix& s, const CMatrix& x);
// x -> K^+ s(x) K, without forming the Kraus superoperator.
SuperoperatorMatrix compose_kraus_after(std::span<const CMatrix> kraus, const SuperoperatorMatrix& s);

// sum_ij E_ij (x) S(E_ij)
ChoiMatrix superop_to_choi(const SuperoperatorMatrix& s);

struct CpOrderVerdict {
  bool holds = false;
  double min_eigenvalue = 0.;
};

// A > B in CP order: Choi(A - B) PSD up to `tolerance` (a negative number).
CpOrderVerdict cp_order_check(const SuperoperatorMatrix& a, const SuperoperatorMatrix& b,
                              double tolerance = -1e-10);
double choi_min_eigenvalue(const SuperoperatorMatrix& s);

}  // namespace carlab
