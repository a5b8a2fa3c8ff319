#include "carlab/perturbation.hpp"

#include <limits>
#include <stdexcept>

namespace carlab {
namespace {

SuperoperatorMatrix shift_superop(const FockSpace& space, int m) {
  const FockOperator s = shift_lift(space, m);
  const std::vector<CMatrix> kraus{s.adjoint()};  // x -> S x S^+
  return heisenberg_from_kraus(kraus);
}

void require_partition(const std::vector<CPMeasureBin>& measure, int horizon) {
  int edge = 0;
  for (const auto& b : measure) {
    if (b.bin.lo != edge || b.bin.hi <= b.bin.lo)
      throw std::invalid_argument("picard_iterate: measure bins must partition [0, horizon)");
    edge = b.bin.hi;
  }
  if (edge != horizon) throw std::invalid_argument("picard_iterate: measure bins must cover [0, horizon)");
}

double unit_margin(const SuperoperatorMatrix& s, Eigen::Index d) {
  const CMatrix id = CMatrix::Identity(d, d);
  return linalg::min_eigenvalue_hermitian(id - apply_superop(s, id));
}

cplx pair_dense(const FockSpace& space, const RankOneState& st, const CMatrix& y) {
  return linalg::inner(space.wedge(st.gs), linalg::matvec(y, space.wedge(st.fs)));
}

}  // namespace

std::vector<CPMeasureBin> unit_quadrature_bins(const GridSpec& spec, int horizon) {
  std::vector<CPMeasureBin> bins;
  for (int r = 0; r < horizon; ++r) bins.push_back(quadrature_bin(spec, {r, r + 1}));
  return bins;
}

PicardState picard_iterate(const FockSpace& space, const std::vector<CPMeasureBin>& measure, int horizon,
                           const PicardOptions& options) {
  if (horizon < 0) throw std::invalid_argument("picard_iterate: negative horizon");
  if (options.steps < 0) throw std::invalid_argument("picard_iterate: negative step count");
  if (!measure.empty()) require_partition(measure, horizon);
  const Eigen::Index d = space.dim();

  std::vector<std::vector<CMatrix>> kraus;
  for (const auto& b : measure) kraus.push_back(b.kraus(space));

  PicardState st;
  st.variant = options.variant;
  st.horizon = horizon;
  std::vector<SuperoperatorMatrix> base;
  st.base_unit_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t <= horizon; ++t) {
    base.push_back(shift_superop(space, t));
    st.base_unit_margin = std::min(st.base_unit_margin, unit_margin(base.back(), d));
  }
  st.iterates.push_back(base);

  for (int n = 0; n < options.steps; ++n) {
    const auto& prev = st.iterates.back();
    std::vector<SuperoperatorMatrix> next;
    PicardCertificate cert;
    cert.step = n;
    cert.order_min_eigenvalue = std::numeric_limits<double>::infinity();
    cert.unit_margin = std::numeric_limits<double>::infinity();
    for (int t = 0; t <= horizon; ++t) {
      SuperoperatorMatrix s = base[t];
      for (std::size_t b = 0; b < measure.size(); ++b) {
        const TimeBin bin = measure[b].bin;
        if (bin.hi > t) break;
        const int arg = options.variant == PicardVariant::convolution ? t - bin.lo : bin.lo;
        s += compose_kraus_after(kraus[b], prev[arg]);
      }
      cert.order_min_eigenvalue = std::min(cert.order_min_eigenvalue, choi_min_eigenvalue(s - prev[t]));
      cert.unit_margin = std::min(cert.unit_margin, unit_margin(s, d));
      next.push_back(std::move(s));
    }
    st.iterates.push_back(std::move(next));
    st.certificates.push_back(cert);
  }
  return st;
}

int max_compliant_shift(const MonomialObservable& x) {
  int best = std::numeric_limits<int>::max();
  for (const auto* list : {&x.hs, &x.es}) {
    for (const auto& f : *list) {
      int zeros = 0;
      while (zeros < f.size() && f[f.size() - 1 - zeros] == cplx{}) ++zeros;
      best = std::min(best, zeros - f.spec().trailing_cells());
    }
  }
  return best;
}

double picard_reference_gap(const FockSpace& space, const PicardState& state, std::size_t n,
                            const PicardTestSet& tests) {
  if (n >= state.iterates.size()) throw std::out_of_range("picard_reference_gap: step not computed");
  double gap = 0.;
  for (const auto& x : tests.monomials) {
    const int t_max = std::min(state.horizon, max_compliant_shift(x));
    const FockOperator xd = monomial_operator(space, x);
    for (int t = 0; t <= t_max; ++t) {
      const CMatrix evolved = apply_superop(state.iterates[n][t], xd);
      const FockOperator reference = flow_of_shifts(space, TimeIndex{t}, x);
      for (const auto& rho : tests.states)
        gap = std::max(gap, std::abs(pair_dense(space, rho, evolved) - pair_dense(space, rho, reference)));
    }
  }
  return gap;
}

IdentityResidual integral_equation_residual(const GridSpec& spec, TimeIndex t, const RankOneState& state,
                                            const MonomialObservable& x, const IntegralEquationOptions& options) {
  if (t.m < 0 || t.m > spec.points) throw std::out_of_range("integral_equation_residual: time outside grid");
  if (options.domain == DomainCheck::enforce) {
    require_state_domain(state);
    require_monomial_domain(x, Domain::d, t.m);
  }
  const auto& pair = options.backend;
  const WedgeOperator rho(state);
  const cplx lhs = pair(rho, flow_of_shifts(t, x));
  const cplx base = pair(psi(t, rho), x);
  cplx middle{};
  double middle_scale = 0.;
  if (!options.zero_measure) {
    for (int s = 0; s < t.m; ++s) {
      const cplx v = pair(measure_star_quadrature(spec, {s, s + 1}, rho), flow_of_shifts(TimeIndex{t.m - s}, x));
      middle += v;
      middle_scale += std::abs(v);
    }
  }
  IdentityResidual r;
  r.lhs = lhs;
  r.rhs = middle + base;
  r.residual = lhs - middle - base;
  r.scale = std::abs(lhs) + middle_scale + std::abs(base);
  return r;
}

MinimalityReport minimality_report(const FockSpace& space, const PicardState& picard, const PicardTestSet& tests) {
  MinimalityReport rep;
  const Eigen::Index d = space.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const auto& lim = picard.limit();
  rep.prefix_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n + 1 < picard.iterates.size(); ++n)
    for (int t = 0; t <= picard.horizon; ++t)
      rep.prefix_min_eigenvalue =
          std::min(rep.prefix_min_eigenvalue, choi_min_eigenvalue(lim[t] - picard.iterates[n][t]));
  if (picard.iterates.size() < 2) rep.prefix_min_eigenvalue = 0.;
  for (int t = 0; t <= picard.horizon; ++t) {
    rep.limit_unit_error = std::max(rep.limit_unit_error, (apply_superop(lim[t], id) - id).cwiseAbs().maxCoeff());
    rep.base_gap = std::max(rep.base_gap, (lim[t] - picard.iterates.front()[t]).cwiseAbs().maxCoeff());
  }
  rep.reference_gap = picard_reference_gap(space, picard, picard.iterates.size() - 1, tests);
  return rep;
}

}  // namespace carlab
