#pragma once

// Picard iteration for the perturbed semigroup, the integral-equation residual
// Phi^_t - sum_s M([s,s+h)) o Phi^_{t-s} - Phi_t on monomials, and the
// minimality report.

#include <vector>

#include "carlab/measure.hpp"
#include "carlab/superop.hpp"

namespace carlab {

enum class PicardVariant { convolution, lower_endpoint };

struct PicardCertificate {
  int step = 0;                        // certificate for Phi^{step+1} > Phi^step
  double order_min_eigenvalue = 0.;    // min_t lambda_min Choi(Phi^{n+1}_t - Phi^n_t)
  double unit_margin = 0.;             // min_t lambda_min(I - Phi^{n+1}_t(I))
};

struct PicardState {
  PicardVariant variant = PicardVariant::convolution;
  int horizon = 0;  // times 0..horizon cells
  // iterates[n][t], Heisenberg picture
  std::vector<std::vector<SuperoperatorMatrix>> iterates;
  std::vector<PicardCertificate> certificates;
  double base_unit_margin = 0.;  // min_t lambda_min(I - Phi_t(I))

  const std::vector<SuperoperatorMatrix>& limit() const { return iterates.back(); }
};

struct PicardOptions {
  PicardVariant variant = PicardVariant::convolution;
  int steps = 20;
};

// Phi^0_t = Phi_t;
//   convolution:   Phi^{n+1}_t = Phi_t + sum_{bins in [0,t)} M(bin) o Phi^n_{t-lo}
//   lower_endpoint: Phi^{n+1}_t = Phi_t + sum_{bins in [0,t)} M(bin) o Phi^n_{lo}
// An empty measure is the zero measure; otherwise bins must partition [0, horizon).
PicardState picard_iterate(const FockSpace& space, const std::vector<CPMeasureBin>& measure, int horizon,
                           const PicardOptions& options = {});

std::vector<CPMeasureBin> unit_quadrature_bins(const GridSpec& spec, int horizon);

// Largest m such that every function of x vanishes on trailing_cells + m cells.
int max_compliant_shift(const MonomialObservable& x);

struct PicardTestSet {
  std::vector<RankOneState> states;
  std::vector<MonomialObservable> monomials;
};

// max over states, monomials and compliant t <= horizon of
// |Tr(rho Phi^n_t(x)) - Tr(rho Phi^_t(x))|, Phi^ the flow of shifts.
double picard_reference_gap(const FockSpace& space, const PicardState& state, std::size_t n,
                            const PicardTestSet& tests);

struct IntegralEquationOptions {
  bool zero_measure = false;
  DomainCheck domain = DomainCheck::enforce;
  PairingBackend backend{};
};

// Tr(rho Phi^_t(x)) - sum_{s<t} Tr(M_*([s,s+h))(rho) Phi^_{t-s}(x)) - Tr(rho Phi_t(x))
IdentityResidual integral_equation_residual(const GridSpec& spec, TimeIndex t, const RankOneState& state,
                                            const MonomialObservable& x,
                                            const IntegralEquationOptions& options = {});

struct MinimalityReport {
  double prefix_min_eigenvalue = 0.;  // min over n, t of lambda_min Choi(limit_t - Phi^n_t)
  double limit_unit_error = 0.;       // max_t |Phi^inf_t(I) - I|
  double reference_gap = 0.;          // picard_reference_gap of the limit
  double base_gap = 0.;               // max_t |Phi^inf_t - Phi_t| (entrywise)
};

MinimalityReport minimality_report(const FockSpace& space, const PicardState& picard, const PicardTestSet& tests);

}  // namespace carlab
