#pragma once

// Shift semigroups on F(H): Phi_t(x) = S_t x S_t^*, Psi_t(rho) = S_t^* rho S_t,
// the flow of shifts on CAR monomials, the generator L, the perturbation Delta
// and the residual of the trace identity for L + Delta.

#include <vector>

#include "carlab/fock.hpp"
#include "carlab/wedge.hpp"

namespace carlab {

struct TimeIndex {
  int m = 0;  // t = m*h
};

// Gamma of the grid shift by m cells: |J> -> |J << m>, zero when a mode leaves the grid.
FockOperator shift_lift(const FockSpace& space, int m);

FockOperator phi(const FockSpace& space, TimeIndex t, const FockOperator& x);
FockOperator psi(const FockSpace& space, TimeIndex t, const FockOperator& rho);
// Psi_t on wedge operators: every function f -> S_t^* f.
WedgeOperator psi(TimeIndex t, const WedgeOperator& rho);

// a(h) a^+(e) -> a(S_t h) a^+(S_t e)
MonomialObservable flow_of_shifts(TimeIndex t, const MonomialObservable& x);
FockOperator flow_of_shifts(const FockSpace& space, TimeIndex t, const MonomialObservable& x);

// Which difference acts on which side.
//   adjoint_pair: forward D on kets (f) and on creator arguments (e), backward
//                 B on bras (g) and annihilator arguments (h); exact IBP.
//   same_side:    D on f and g, -B on h and e.
enum class DifferenceScheme { adjoint_pair, same_side };
enum class DomainCheck { enforce, skip };

// L(|f><g|) = |Df><g| + |f><D'g| applied slotwise.
WedgeOperator generator_L(const GridSpec& spec, const RankOneState& state,
                          DifferenceScheme scheme = DifferenceScheme::adjoint_pair);
WedgeOperator generator_L(const GridSpec& spec, const WedgeOperator& rho,
                          DifferenceScheme scheme = DifferenceScheme::adjoint_pair);

// Heisenberg generator on monomials: sum_j a(..d_* h_j..)a^+(e) + sum_k a(h)a^+(..d_* e_k..)
std::vector<MonomialObservable> generator_L_heisenberg(const GridSpec& spec,
                                                       const MonomialObservable& x,
                                                       DifferenceScheme scheme = DifferenceScheme::adjoint_pair);

// Delta(|f><g|) = sum_jk (-1)^(j+k) f_j(0) conj(g_k(0)) |f\j><g\k|
WedgeOperator delta_perturbation(const RankOneState& state);
WedgeOperator delta_perturbation(const WedgeOperator& rho);

// a(u) S_o^* on both sides:  sum c * scale * <u,S_o^* k_j> conj(<u,S_o^* b_l>) |..><..|
WedgeOperator sandwich(const GridFunction& u, double scale, int offset, const WedgeOperator& rho);
// delta_0 / sqrt(h): the grid function whose annihilator is the mode-0 annihilator a_0.
GridFunction origin_mode(const GridSpec& spec);

// Pairings Tr(op x) either through Gram determinants or dense Fock vectors.
struct PairingBackend {
  const FockSpace* dense = nullptr;

  cplx operator()(const WedgeOperator& op, const MonomialObservable& x) const {
    return dense ? pairing_dense(*dense, op, x) : pairing(op, x);
  }
};

struct IdentityResidual {
  cplx lhs;
  cplx rhs;
  cplx residual;
  double scale = 0.;  // sum of magnitudes of the parts

  double relative() const { return scale > 0 ? std::abs(residual) / scale : std::abs(residual); }
};

struct Theorem1Options {
  DifferenceScheme scheme = DifferenceScheme::adjoint_pair;
  DomainCheck domain = DomainCheck::enforce;
  double delta_sign = 1.0;
  PairingBackend backend{};
};

// Tr((L + Delta)(|f><g|) x) - Tr(|f><g| L^(x)), x = a(h)a^+(e).
IdentityResidual theorem1_residual(const GridSpec& spec, const RankOneState& state,
                                   const MonomialObservable& x, const Theorem1Options& options = {});

// Throws std::domain_error when a function breaks its domain tag.
void require_state_domain(const RankOneState& state, int extra_cells = 0);
void require_monomial_domain(const MonomialObservable& x, Domain domain, int extra_cells = 0);

struct SemigroupAxiomsReport {
  double semigroup_law_error = 0.;   // max |Phi_{t+s} - Phi_t Phi_s|
  double choi_min_eigenvalue = 0.;   // min over t
  double unit_margin = 0.;           // min over t of lambda_min(I - Phi_t(I))
  double duality_error = 0.;         // max |Tr(Psi_t(rho) x) - Tr(rho Phi_t(x))|
  std::vector<double> continuity;    // |Tr(rho Phi_h(x)) - Tr(rho x)| under grid refinement
};

// Dense checks on `space` (Choi needs a small space) over times 0..max_m;
// the continuity surrogate uses the wedge backend on grids of refinement_points.
SemigroupAxiomsReport semigroup_axioms_check(const FockSpace& space, int max_m,
                                             const std::vector<int>& refinement_points,
                                             std::uint64_t seed);

}  // namespace carlab
