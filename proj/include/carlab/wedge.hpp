#pragma once

// Symbolic operators on F(H) built from wedge vectors.
//
// A WedgeOperator is a finite sum  sum_i c_i |k_i1 ^ ... ^ k_in><b_i1 ^ ... ^ b_im|.
// Pairings, traces and trace norms only need overlaps of wedge vectors, which
// are Gram determinants of grid inner products, so nothing here depends on
// 2^M. The dense realizations are for cross-checks against FockSpace.

#include <vector>

#include "carlab/fock.hpp"
#include "carlab/grid.hpp"

namespace carlab {

using FunctionList = std::vector<GridFunction>;

// a(h_1) ... a(h_p) a^+(e_1) ... a^+(e_q)
struct MonomialObservable {
  FunctionList hs;
  FunctionList es;

  int parity() const { return static_cast<int>((hs.size() + es.size()) % 2); }
};

// |f_1 ^ ... ^ f_n><g_1 ^ ... ^ g_m|; empty lists stand for the vacuum.
struct RankOneState {
  FunctionList fs;
  FunctionList gs;
};

struct WedgeTerm {
  cplx coeff;
  FunctionList kets;
  FunctionList bras;
};

class WedgeOperator {
 public:
  WedgeOperator() = default;
  explicit WedgeOperator(const RankOneState& state);

  const std::vector<WedgeTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(cplx coeff, FunctionList kets, FunctionList bras);
  void append(const WedgeOperator& other, cplx scale = 1.0);

  WedgeOperator adjoint() const;
  // Merges terms whose ket and bra lists are bitwise identical; drops zeros.
  WedgeOperator simplified() const;

 private:
  std::vector<WedgeTerm> terms_;
};

WedgeOperator operator+(const WedgeOperator& a, const WedgeOperator& b);
WedgeOperator operator-(const WedgeOperator& a, const WedgeOperator& b);
WedgeOperator operator*(cplx s, const WedgeOperator& op);

// <b_1 ^ ... ^ b_m | k_1 ^ ... ^ k_n>; zero unless m == n.
cplx wedge_overlap(const FunctionList& bras, const FunctionList& kets);

// a(u)(f_1 ^ ... ^ f_n) = sum_j (-1)^(j-1) <u, f_j> f_1 ^ .. f_j omitted .. ^ f_n
struct Contraction {
  cplx coeff;
  FunctionList rest;
};
std::vector<Contraction> contract(const GridFunction& u, const FunctionList& fs);

FunctionList without(const FunctionList& fs, std::size_t j);
FunctionList replaced(const FunctionList& fs, std::size_t j, GridFunction f);
FunctionList mapped(const FunctionList& fs, const CMatrix& op);

// Tr(op * x) for x = a(h)a^+(e); uses
// <u| a(h_1)..a(h_p) a^+(e_1)..a^+(e_q) |v> = <h_p ^ .. ^ h_1 ^ u | e_1 ^ .. ^ e_q ^ v>.
cplx pairing(const WedgeOperator& op, const MonomialObservable& x);
cplx trace(const WedgeOperator& op);
double trace_norm(const WedgeOperator& op);

// Dense realizations.
FockVector apply_monomial(const FockSpace& space, const MonomialObservable& x, const FockVector& v);
FockOperator monomial_operator(const FockSpace& space, const MonomialObservable& x);
FockOperator to_dense(const FockSpace& space, const WedgeOperator& op);
// Same pairing through dense Fock vectors (no Gram determinants).
cplx pairing_dense(const FockSpace& space, const WedgeOperator& op, const MonomialObservable& x);

}  // namespace carlab
