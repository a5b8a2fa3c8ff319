#include "carlab/measure.hpp"

#include <stdexcept>

namespace carlab {
namespace {

int block_cells(TimeBin bin, int n) {
  if (n <= 0) throw std::invalid_argument("kraus_riemann_sum: n must be positive");
  if (bin.width() <= 0 || bin.width() % n != 0)
    throw std::invalid_argument("kraus_riemann_sum: n must divide the bin width");
  return bin.width() / n;
}

GridFunction indicator_cells(const GridSpec& spec, int cells) {
  GridFunction chi(spec);
  for (int i = 0; i < cells; ++i) chi.values()[i] = 1.0;
  return chi;
}

}  // namespace

void require_bin(const GridSpec& spec, TimeBin bin) {
  if (bin.lo < 0 || bin.hi < bin.lo || bin.hi > spec.points)
    throw std::out_of_range("time bin outside [0, X_max]");
}

WedgeOperator measure_star_quadrature(const GridSpec& spec, TimeBin bin, const WedgeOperator& rho) {
  require_bin(spec, bin);
  const GridFunction u = origin_mode(spec);
  WedgeOperator out;
  // h * Delta(Psi_r(rho)) = a_0 S_r^* rho S_r a_0^+
  for (int r = bin.lo; r < bin.hi; ++r) out.append(sandwich(u, 1.0, r, rho));
  return out;
}

WedgeOperator measure_star_quadrature(const GridSpec& spec, TimeBin bin, const RankOneState& state) {
  return measure_star_quadrature(spec, bin, WedgeOperator(state));
}

CPMeasureBin quadrature_bin(const GridSpec& spec, TimeBin bin) {
  require_bin(spec, bin);
  return {spec, bin, MeasureConstruction::quadrature, 0};
}

CPMeasureBin kraus_riemann_sum(const GridSpec& spec, TimeBin bin, int n) {
  require_bin(spec, bin);
  block_cells(bin, n);
  return {spec, bin, MeasureConstruction::kraus_sum, n};
}

WedgeOperator CPMeasureBin::apply(const WedgeOperator& rho) const {
  if (construction == MeasureConstruction::quadrature) return measure_star_quadrature(grid, bin, rho);
  const int k = block_cells(bin, blocks);
  const GridFunction chi = indicator_cells(grid, k);
  const double delta = k * grid.spacing;
  WedgeOperator out;
  for (int j = 0; j < blocks; ++j) out.append(sandwich(chi, 1.0 / delta, bin.lo + j * k, rho));
  return out;
}

std::vector<FockOperator> CPMeasureBin::kraus(const FockSpace& space) const {
  if (space.modes() != grid.points) throw std::invalid_argument("CPMeasureBin: mode count differs from grid");
  std::vector<FockOperator> out;
  if (construction == MeasureConstruction::quadrature) {
    const FockOperator a0 = space.annihilator(0);
    for (int r = bin.lo; r < bin.hi; ++r)
      out.push_back(linalg::matmul(a0, shift_lift(space, r).adjoint()));
    return out;
  }
  const int k = block_cells(bin, blocks);
  const double delta = k * grid.spacing;
  const FockOperator a_chi = space.ladder(indicator_cells(grid, k), LadderKind::annihilate);
  for (int j = 0; j < blocks; ++j)
    out.push_back(linalg::matmul(a_chi, shift_lift(space, bin.lo + j * k).adjoint()) / std::sqrt(delta));
  return out;
}

FockOperator CPMeasureBin::apply_dense(const FockSpace& space, const FockOperator& rho) const {
  FockOperator out = FockOperator::Zero(space.dim(), space.dim());
  for (const auto& v : kraus(space)) out += linalg::matmul(linalg::matmul(v, rho), v.adjoint());
  return out;
}

double qn_norm(const FockSpace& space, const GridSpec& spec, TimeBin bin, int n) {
  require_bin(spec, bin);
  if (bin.width() == 0) return 0.0;
  const int k = block_cells(bin, n);
  const FockOperator a_chi = space.ladder(indicator_cells(spec, k), LadderKind::annihilate);
  const FockOperator number_like = linalg::matmul(a_chi.adjoint(), a_chi);
  FockOperator q = FockOperator::Zero(space.dim(), space.dim());
  for (int j = 0; j < n; ++j) {
    const TimeIndex o{bin.lo + j * k};
    q += phi(space, o, number_like);  // S_o a^+ a S_o^*
  }
  return linalg::max_eigenvalue_hermitian(q);
}

CovarianceResidual covariance_residual(const GridSpec& spec, int r, TimeBin bin, const RankOneState& state) {
  require_bin(spec, bin.shifted(r));
  const WedgeOperator rho(state);
  const WedgeOperator lhs = measure_star_quadrature(spec, bin, psi(TimeIndex{r}, rho));
  const WedgeOperator rhs = measure_star_quadrature(spec, bin.shifted(r), rho);
  return {trace_norm(lhs - rhs), trace_norm(lhs) + trace_norm(rhs)};
}

CovarianceResidual covariance_residual_heisenberg(const GridSpec& spec, int r, TimeBin bin,
                                                  const RankOneState& state, const MonomialObservable& x) {
  require_bin(spec, bin.shifted(r));
  const WedgeOperator rho(state);
  // Tr(rho Phi_r(M(bin)(x))) = Tr(M_*(bin)(Psi_r(rho)) x)
  const cplx lhs = pairing(measure_star_quadrature(spec, bin, psi(TimeIndex{r}, rho)), x);
  const cplx rhs = pairing(measure_star_quadrature(spec, bin.shifted(r), rho), x);
  return {std::abs(lhs - rhs), std::abs(lhs) + std::abs(rhs)};
}

cplx measure_pairing(const GridSpec& spec, TimeBin bin, const RankOneState& state, const MonomialObservable& x) {
  return pairing(measure_star_quadrature(spec, bin, state), x);
}

cplx measure_pairing(const FockSpace& space, const GridSpec& spec, TimeBin bin, const RankOneState& state,
                     const FockOperator& x) {
  const FockOperator m = to_dense(space, measure_star_quadrature(spec, bin, state));
  return linalg::trace_product(m, x);
}

double small_time_link(const GridSpec& spec, const RankOneState& state, TimeIndex t) {
  if (t.m < 1) throw std::invalid_argument("small_time_link: t must be at least one cell");
  const WedgeOperator rho(state);
  const WedgeOperator avg = (1.0 / (t.m * spec.spacing)) * measure_star_quadrature(spec, {0, t.m}, rho);
  return trace_norm(avg - delta_perturbation(rho));
}

}  // namespace carlab
