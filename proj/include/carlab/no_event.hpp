#pragma once

// Finite-dimensional no-event semigroups Psi_t(rho) = T_t rho T_t^+, T_t = e^{tK},
// perturbations Delta(rho) = sum_j L_j rho L_j^+, the excessive map
// Theta(x) = int_0^inf T_r^+ (sum_j L_j^+ x L_j) T_r dr and the measure
// M([t,s)) = Phi_t o Theta - Phi_s o Theta.

#include <cstdint>
#include <functional>
#include <vector>

#include "carlab/superop.hpp"

namespace carlab {

using CouplingFamily = std::vector<CMatrix>;

// lambda_max(K + K^+)
double dissipativity_margin(const CMatrix& k);
// lambda_max(sum L^+ L + K + K^+); admissible iff <= 1e-12
double admissibility_margin(const CMatrix& k, const CouplingFamily& ls);
void require_dissipative(const CMatrix& k);
void require_admissible(const CMatrix& k, const CouplingFamily& ls);

CMatrix contraction_semigroup(const CMatrix& k, double t);  // e^{tK}
CMatrix no_event_evolve(double t, const CMatrix& k, const CMatrix& rho);
// Kraus-form generator L(rho) = K rho + rho K^+
CMatrix no_event_generator(const CMatrix& k, const CMatrix& rho);

// sum_j |L_j psi><L_j xi|
CMatrix delta_from_couplings(const CouplingFamily& ls, const CVector& psi, const CVector& xi);
CMatrix delta_star(const CouplingFamily& ls, const CMatrix& rho);    // sum L rho L^+
CMatrix delta_heisenberg(const CouplingFamily& ls, const CMatrix& x);  // sum L^+ x L

// Heisenberg Phi_t(x) = T_t^+ x T_t as a superoperator.
SuperoperatorMatrix no_event_phi(const CMatrix& k, double t);

enum class ThetaMethod { lyapunov, quadrature };

// Lyapunov: K^+ Theta + Theta K = -sum L^+ x L; throws std::domain_error when
// the Sylvester operator is singular.
CMatrix theta_excessive(const CMatrix& k, const CouplingFamily& ls, const CMatrix& x, ThetaMethod method);
SuperoperatorMatrix theta_superop(const CMatrix& k, const CouplingFamily& ls, ThetaMethod method);

// Phi_t o Theta - Phi_s o Theta
SuperoperatorMatrix measure_from_theta(const CMatrix& k, const CouplingFamily& ls, double t, double s,
                                       ThetaMethod method);
// int_t^s Phi_r o Delta^* dr by Gauss-Legendre panels.
SuperoperatorMatrix measure_eq1_quadrature(const CMatrix& k, const CouplingFamily& ls, double t, double s);

// Gauss-Legendre panels for int_a^b F(r) dr; b = infinity integrates until
// |F| < 1e-14 * max|F| at a panel end (std::runtime_error if it never does).
CMatrix integrate_matrix(const std::function<CMatrix(double)>& f, double a, double b, double panel_width);

struct OpenSystem {
  CMatrix k;
  CouplingFamily ls;
};

// K = -1/2 sum L^+L - iH - damping * I with random H and L_j.
OpenSystem random_open_system(int dim, int couplings, double damping, std::uint64_t seed);
// K = -(gamma/2)|1><1|, L = sqrt(gamma)|0><1|
OpenSystem qubit_decay(double gamma);

}  // namespace carlab
