#pragma once

// The covariant CP measure on the shift semigroup: left-endpoint quadrature
// M_*([t,s))(rho) = sum_{r in [t,s)} h * Delta(Psi_r(rho)), the Kraus Riemann
// sums of the Q_n bound, covariance and the small-time link to Delta.

#include <vector>

#include "carlab/fock.hpp"
#include "carlab/shift.hpp"
#include "carlab/wedge.hpp"

namespace carlab {

// [lo*h, hi*h)
struct TimeBin {
  int lo = 0;
  int hi = 0;

  int width() const { return hi - lo; }
  TimeBin shifted(int r) const { return {lo + r, hi + r}; }
};

void require_bin(const GridSpec& spec, TimeBin bin);

enum class MeasureConstruction { quadrature, kraus_sum };

struct CPMeasureBin {
  GridSpec grid;
  TimeBin bin;
  MeasureConstruction construction = MeasureConstruction::quadrature;
  int blocks = 0;  // n for kraus_sum

  // M_*(bin) on wedge operators.
  WedgeOperator apply(const WedgeOperator& rho) const;
  // Kraus operators on the dense space (modes must equal grid points).
  std::vector<FockOperator> kraus(const FockSpace& space) const;
  FockOperator apply_dense(const FockSpace& space, const FockOperator& rho) const;
};

CPMeasureBin quadrature_bin(const GridSpec& spec, TimeBin bin);
// Kraus V_j = delta^{-1/2} a(chi_[0,delta]) S^*_{lo + j*delta}, j < n.
CPMeasureBin kraus_riemann_sum(const GridSpec& spec, TimeBin bin, int n);

WedgeOperator measure_star_quadrature(const GridSpec& spec, TimeBin bin, const WedgeOperator& rho);
WedgeOperator measure_star_quadrature(const GridSpec& spec, TimeBin bin, const RankOneState& state);

// lambda_max of Q_n = sum_j V_j^+ V_j for the unnormalized V_j = a(chi) S^*_{lo + j*delta}.
double qn_norm(const FockSpace& space, const GridSpec& spec, TimeBin bin, int n);

struct CovarianceResidual {
  double residual = 0.;
  double scale = 0.;
};

// || M_*(bin)(Psi_r(rho)) - M_*(bin + r)(rho) ||_1
CovarianceResidual covariance_residual(const GridSpec& spec, int r, TimeBin bin, const RankOneState& state);
// |Tr(rho (Phi_r o M(bin) - M(bin + r))(x))|
CovarianceResidual covariance_residual_heisenberg(const GridSpec& spec, int r, TimeBin bin,
                                                  const RankOneState& state, const MonomialObservable& x);

// Tr(M_*(bin)(rho) x)
cplx measure_pairing(const GridSpec& spec, TimeBin bin, const RankOneState& state, const MonomialObservable& x);
cplx measure_pairing(const FockSpace& space, const GridSpec& spec, TimeBin bin, const RankOneState& state,
                     const FockOperator& x);

// || (1/t) M_*([0,t))(rho) - Delta(rho) ||_1, t = m*h
double small_time_link(const GridSpec& spec, const RankOneState& state, TimeIndex t);

}  // namespace carlab
