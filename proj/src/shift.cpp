#include "carlab/shift.hpp"

#include <random>
#include <stdexcept>

#include "carlab/superop.hpp"

namespace carlab {
namespace {

// J << m if every occupied mode stays on the grid, otherwise -1.
long shifted_index(BasisIndex j, int m, int modes) {
  if (m >= modes) return j == 0 ? 0 : -1;
  const BasisIndex out = j << m;
  return (out >> modes) != 0 ? -1 : static_cast<long>(out);
}

FunctionList shifted_adjoint(const FunctionList& fs, int m) {
  FunctionList out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(shift_adjoint(f, m));
  return out;
}

FunctionList shifted_forward(const FunctionList& fs, int m) {
  FunctionList out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(shift_forward(f, m));
  return out;
}

void require_time(TimeIndex t) {
  if (t.m < 0) throw std::invalid_argument("negative time index");
}

}  // namespace

FockOperator shift_lift(const FockSpace& space, int m) {
  if (m < 0) throw std::invalid_argument("shift_lift: negative shift");
  FockOperator s = FockOperator::Zero(space.dim(), space.dim());
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(space.dim()); ++j) {
    const long to = shifted_index(j, m, space.modes());
    if (to >= 0) s(to, j) = 1.0;
  }
  return s;
}

FockOperator phi(const FockSpace& space, TimeIndex t, const FockOperator& x) {
  require_time(t);
  const auto d = static_cast<BasisIndex>(space.dim());
  if (x.rows() != space.dim() || x.cols() != space.dim()) throw std::invalid_argument("phi: dimension");
  FockOperator out = FockOperator::Zero(d, d);
  for (BasisIndex k = 0; k < d; ++k) {
    const long kk = shifted_index(k, t.m, space.modes());
    if (kk < 0) continue;
    for (BasisIndex j = 0; j < d; ++j) {
      const long jj = shifted_index(j, t.m, space.modes());
      if (jj >= 0) out(jj, kk) = x(j, k);
    }
  }
  return out;
}

FockOperator psi(const FockSpace& space, TimeIndex t, const FockOperator& rho) {
  require_time(t);
  const auto d = static_cast<BasisIndex>(space.dim());
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) throw std::invalid_argument("psi: dimension");
  FockOperator out = FockOperator::Zero(d, d);
  for (BasisIndex k = 0; k < d; ++k) {
    const long kk = shifted_index(k, t.m, space.modes());
    if (kk < 0) continue;
    for (BasisIndex j = 0; j < d; ++j) {
      const long jj = shifted_index(j, t.m, space.modes());
      if (jj >= 0) out(j, k) = rho(jj, kk);
    }
  }
  return out;
}

WedgeOperator psi(TimeIndex t, const WedgeOperator& rho) {
  require_time(t);
  WedgeOperator out;
  for (const auto& term : rho.terms())
    out.add(term.coeff, shifted_adjoint(term.kets, t.m), shifted_adjoint(term.bras, t.m));
  return out;
}

MonomialObservable flow_of_shifts(TimeIndex t, const MonomialObservable& x) {
  require_time(t);
  return {shifted_forward(x.hs, t.m), shifted_forward(x.es, t.m)};
}

FockOperator flow_of_shifts(const FockSpace& space, TimeIndex t, const MonomialObservable& x) {
  return monomial_operator(space, flow_of_shifts(t, x));
}

WedgeOperator generator_L(const GridSpec& spec, const WedgeOperator& rho, DifferenceScheme scheme) {
  const CMatrix d = diff_forward_matrix(spec);
  const CMatrix bra_op = scheme == DifferenceScheme::adjoint_pair ? diff_backward_matrix(spec) : d;
  WedgeOperator out;
  for (const auto& term : rho.terms()) {
    for (std::size_t j = 0; j < term.kets.size(); ++j)
      out.add(term.coeff, replaced(term.kets, j, apply(d, term.kets[j])), term.bras);
    for (std::size_t k = 0; k < term.bras.size(); ++k)
      out.add(term.coeff, term.kets, replaced(term.bras, k, apply(bra_op, term.bras[k])));
  }
  return out;
}

WedgeOperator generator_L(const GridSpec& spec, const RankOneState& state, DifferenceScheme scheme) {
  return generator_L(spec, WedgeOperator(state), scheme);
}

std::vector<MonomialObservable> generator_L_heisenberg(const GridSpec& spec, const MonomialObservable& x,
                                                       DifferenceScheme scheme) {
  const CMatrix h_op = -diff_backward_matrix(spec);
  const CMatrix e_op = scheme == DifferenceScheme::adjoint_pair ? CMatrix(-diff_forward_matrix(spec)) : h_op;
  std::vector<MonomialObservable> out;
  for (std::size_t j = 0; j < x.hs.size(); ++j)
    out.push_back({replaced(x.hs, j, apply(h_op, x.hs[j])), x.es});
  for (std::size_t k = 0; k < x.es.size(); ++k)
    out.push_back({x.hs, replaced(x.es, k, apply(e_op, x.es[k]))});
  return out;
}

GridFunction origin_mode(const GridSpec& spec) {
  GridFunction u(spec);
  u.values()[0] = 1.0 / std::sqrt(spec.spacing);
  return u;
}

WedgeOperator sandwich(const GridFunction& u, double scale, int offset, const WedgeOperator& rho) {
  WedgeOperator out;
  for (const auto& term : rho.terms()) {
    const auto left = contract(u, shifted_adjoint(term.kets, offset));
    if (left.empty()) continue;
    const auto right = contract(u, shifted_adjoint(term.bras, offset));
    for (const auto& l : left)
      for (const auto& r : right) out.add(scale * term.coeff * l.coeff * std::conj(r.coeff), l.rest, r.rest);
  }
  return out;
}

WedgeOperator delta_perturbation(const WedgeOperator& rho) {
  if (rho.empty()) return {};
  const GridSpec& spec = [&]() -> const GridSpec& {
    for (const auto& t : rho.terms()) {
      if (!t.kets.empty()) return t.kets.front().spec();
      if (!t.bras.empty()) return t.bras.front().spec();
    }
    static const GridSpec none{};
    return none;
  }();
  if (spec.points == 0) return {};  // only vacuum patterns
  return sandwich(origin_mode(spec), 1.0 / spec.spacing, 0, rho);
}

WedgeOperator delta_perturbation(const RankOneState& state) { return delta_perturbation(WedgeOperator(state)); }

void require_state_domain(const RankOneState& state, int extra_cells) {
  for (const auto* list : {&state.fs, &state.gs})
    for (const auto& f : *list)
      if (!vanishes_on_trailing(f, f.spec().trailing_cells() + extra_cells))
        throw std::domain_error("state function does not vanish on the trailing cells");
}

void require_monomial_domain(const MonomialObservable& x, Domain domain, int extra_cells) {
  for (const auto* list : {&x.hs, &x.es}) {
    for (const auto& f : *list) {
      if (!vanishes_on_trailing(f, f.spec().trailing_cells() + extra_cells))
        throw std::domain_error("monomial function does not vanish on the trailing cells");
      if (domain == Domain::d_star && f.at_origin() != cplx{})
        throw std::domain_error("monomial function is not in D(d_*): value at 0 is nonzero");
    }
  }
}

IdentityResidual theorem1_residual(const GridSpec& spec, const RankOneState& state,
                                   const MonomialObservable& x, const Theorem1Options& options) {
  if (options.domain == DomainCheck::enforce) {
    require_state_domain(state);
    require_monomial_domain(x, Domain::d_star);
  }
  const auto& pair = options.backend;
  const cplx l_part = pair(generator_L(spec, state, options.scheme), x);
  const cplx d_part = options.delta_sign * pair(delta_perturbation(state), x);
  const WedgeOperator rho(state);
  cplx rhs{};
  double rhs_scale = 0.;
  for (const auto& y : generator_L_heisenberg(spec, x, options.scheme)) {
    const cplx v = pair(rho, y);
    rhs += v;
    rhs_scale += std::abs(v);
  }
  IdentityResidual r;
  r.lhs = l_part + d_part;
  r.rhs = rhs;
  r.residual = r.lhs - r.rhs;
  r.scale = std::abs(l_part) + std::abs(d_part) + rhs_scale;
  return r;
}

SemigroupAxiomsReport semigroup_axioms_check(const FockSpace& space, int max_m,
                                             const std::vector<int>& refinement_points,
                                             std::uint64_t seed) {
  SemigroupAxiomsReport rep;
  const Eigen::Index d = space.dim();
  std::vector<SuperoperatorMatrix> maps;
  for (int m = 0; m <= max_m; ++m)
    maps.push_back(superop_from_map(d, [&](const CMatrix& x) { return phi(space, {m}, x); }));

  rep.choi_min_eigenvalue = std::numeric_limits<double>::infinity();
  rep.unit_margin = std::numeric_limits<double>::infinity();
  const CMatrix id = CMatrix::Identity(d, d);
  for (int m = 0; m <= max_m; ++m) {
    rep.choi_min_eigenvalue = std::min(rep.choi_min_eigenvalue, choi_min_eigenvalue(maps[m]));
    rep.unit_margin = std::min(rep.unit_margin, linalg::min_eigenvalue_hermitian(id - phi(space, {m}, id)));
    for (int k = 0; m + k <= max_m; ++k) {
      const SuperoperatorMatrix composed = linalg::matmul(maps[m], maps[k]);
      rep.semigroup_law_error = std::max(rep.semigroup_law_error, (maps[m + k] - composed).cwiseAbs().maxCoeff());
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_matrix = [&] {
    CMatrix a(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a(i, j) = cplx(re, im);
      }
    return a;
  };
  for (int m = 0; m <= max_m; ++m) {
    const CMatrix a = random_matrix();
    const CMatrix rho = linalg::matmul(a, a.adjoint());
    const CMatrix x = random_matrix();
    const cplx lhs = linalg::trace_product(psi(space, {m}, rho), x);
    const cplx rhs = linalg::trace_product(rho, phi(space, {m}, x));
    rep.duality_error = std::max(rep.duality_error, std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300));
  }

  // Weak continuity surrogate at t = h on a fixed physical interval.
  constexpr double extent = 4.0;
  for (int points : refinement_points) {
    const GridSpec spec(points, extent / points);
    const auto f = make_test_function(spec, TestFunctionKind::bump_D_d, {.center = 1.2, .width = 0.8, .wavenumber = 1.0});
    const auto h = make_test_function(spec, TestFunctionKind::bump_D_dstar, {.center = 1.5, .width = 1.0});
    const auto e = make_test_function(spec, TestFunctionKind::bump_D_dstar, {.center = 1.0, .width = 0.7, .wavenumber = -0.5});
    const WedgeOperator rho(RankOneState{{f}, {f}});
    const MonomialObservable x{{h}, {e}};
    rep.continuity.push_back(std::abs(pairing(psi(TimeIndex{1}, rho), x) - pairing(rho, x)));
  }
  return rep;
}

}  // namespace carlab
