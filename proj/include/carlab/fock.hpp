#pragma once

// Dense truncated antisymmetric Fock space over M modes.
//
// Basis states are occupation bitmasks (bit k set <=> mode k occupied) and
// |J> = a_{j1}^+ ... a_{jn}^+ |0> with j1 < ... < jn. The ladder sign is
// (-1)^(number of occupied modes below k); CAR relations are the check that
// this matches the ordered-insertion convention.

#include <cstdint>
#include <span>
#include <vector>

#include "carlab/grid.hpp"
#include "carlab/linalg.hpp"

namespace carlab {

using FockVector = CVector;
using FockOperator = CMatrix;
using BasisIndex = std::uint32_t;

enum class LadderKind { annihilate, create };

// (-1)^(popcount of mask below bit k)
int ordering_sign(BasisIndex mask, int k);
BasisIndex occupation_mask(std::span<const int> modes);

class FockSpace {
 public:
  static constexpr int max_modes = 12;

  explicit FockSpace(int modes);

  int modes() const { return modes_; }
  Eigen::Index dim() const { return Eigen::Index{1} << modes_; }

  FockVector vacuum() const;
  FockVector basis_vector(BasisIndex mask) const;

  FockVector annihilate_mode(int k, const FockVector& v) const;
  FockVector create_mode(int k, const FockVector& v) const;
  FockOperator annihilator(int k) const;
  FockOperator creator(int k) const;

  // a(c) = sum_j conj(c_j) a_j and a^+(c) = sum_j c_j a_j^+ for a mode vector c.
  FockVector annihilate(const CVector& modes, const FockVector& v) const;
  FockVector create(const CVector& modes, const FockVector& v) const;

  FockOperator ladder(const GridFunction& f, LadderKind kind) const;
  FockVector apply_ladder(const GridFunction& f, LadderKind kind, const FockVector& v) const;

  // a^+(f_1) ... a^+(f_n) |0>
  FockVector wedge(std::span<const GridFunction> fs) const;
  // (1/n!) sum_e sgn(e) f_e(1) x ... x f_e(n), read back into the Fock basis
  // through the isometric embedding |J> -> sqrt(n!) P_a(e_J). n <= 5.
  FockVector antisymmetrize_oracle(std::span<const GridFunction> fs) const;

  // Multiplicative lift: Gamma(V)(f_1 ^ ... ^ f_n) = Vf_1 ^ ... ^ Vf_n, Gamma(V)|0> = |0>.
  FockOperator gamma_lift(const CMatrix& v) const;
  // Leibniz lift: sum_k a^+(A e_k) a_k.
  FockOperator derivation_lift(const CMatrix& a) const;
  FockOperator number_operator() const;
  // sum_k a_k rho a_k^+
  FockOperator xi_star(const FockOperator& rho) const;

  void require_grid(const GridFunction& f) const;

 private:
  void require_mode(int k) const;
  void require_vector(const FockVector& v) const;

  int modes_;
};

// det [<f_j, g_k>]
cplx gram_determinant(std::span<const GridFunction> fs, std::span<const GridFunction> gs);

}  // namespace carlab
