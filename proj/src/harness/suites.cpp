#include "carlab/harness/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "carlab/fock.hpp"
#include "carlab/measure.hpp"
#include "carlab/no_event.hpp"
#include "carlab/shift.hpp"
#include "carlab/superop.hpp"
#include "carlab/wedge.hpp"
#include "suite_support.hpp"

namespace carlab::harness {

using detail::max_abs;
using detail::random_density;
using detail::random_matrix;
using detail::random_supported;
using detail::rng_for;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SuiteReport new_report(const std::string& name, const ExperimentConfig& cfg) {
  SuiteReport rep;
  rep.suite = name;
  rep.preset = cfg.preset;
  rep.seed = cfg.seed;
  return rep;
}

FockVector basis(const FockSpace& space, std::initializer_list<int> modes) {
  const std::vector<int> v(modes);
  return space.basis_vector(occupation_mask(v));
}

// Tuples (n, m, p, q) with n, m, p, q <= 2 and n + q - p = m (non-trivial pairing).
std::vector<std::array<int, 4>> pairing_tuples(bool even) {
  std::vector<std::array<int, 4>> out;
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      if (((p + q) % 2 == 0) != even) continue;
      for (int n = 0; n <= 2; ++n) {
        const int m = n + q - p;
        if (m < 0 || m > 2 || (n == 0 && m == 0 && p == 0 && q == 0)) continue;
        out.push_back({n, m, p, q});
      }
    }
  return out;
}

RankOneState random_state(const GridSpec& spec, std::mt19937_64& rng, int n, int m, int tail = 0) {
  RankOneState st;
  for (int i = 0; i < n; ++i) st.fs.push_back(random_supported(spec, rng, Domain::d, tail));
  for (int i = 0; i < m; ++i) st.gs.push_back(random_supported(spec, rng, Domain::d, tail));
  return st;
}

MonomialObservable random_monomial(const GridSpec& spec, std::mt19937_64& rng, int p, int q, Domain domain,
                                   int tail = 0) {
  MonomialObservable x;
  for (int i = 0; i < p; ++i) x.hs.push_back(random_supported(spec, rng, domain, tail));
  for (int i = 0; i < q; ++i) x.es.push_back(random_supported(spec, rng, domain, tail));
  return x;
}

template <typename F>
bool throws_domain_error(F&& f) {
  try {
    f();
  } catch (const std::domain_error&) {
    return true;
  }
  return false;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"car_algebra", "theorem1", "measure", "picard",
                                              "theorem2",    "no_event", "all"};
  return names;
}

const std::vector<std::string>& sweep_targets() {
  static const std::vector<std::string> names{"theorem1_h", "theorem2_h", "kraus_n", "mera_t", "picard_n"};
  return names;
}

SuiteReport run_suite(const std::string& name, const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  if (name == "car_algebra") rep = car_algebra_suite(cfg);
  else if (name == "theorem1") rep = theorem1_suite(cfg);
  else if (name == "measure") rep = measure_suite(cfg);
  else if (name == "picard") rep = picard_suite(cfg);
  else if (name == "theorem2") rep = theorem2_suite(cfg);
  else if (name == "no_event") rep = no_event_suite(cfg);
  else if (name == "all") {
    rep = new_report("all", cfg);
    for (const auto& s : suite_names())
      if (s != "all") rep.merge(run_suite(s, cfg));
  } else {
    throw ConfigError("unknown suite '" + name + "'");
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport car_algebra_suite(const ExperimentConfig& cfg) {
  SuiteReport rep = new_report("car_algebra", cfg);
  const int m = cfg.modes;
  const FockSpace space(m);
  const GridSpec spec(m, cfg.spacing);
  auto rng = rng_for(cfg, 1);
  const Eigen::Index d = space.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const double car_tol = cfg.tol("car", 1e-10);

  std::vector<FockOperator> a, c;
  for (int k = 0; k < m; ++k) {
    a.push_back(space.annihilator(k));
    c.push_back(space.creator(k));
  }
  double aa = 0., cc = 0., ac = 0., adj = 0., sq = 0.;
  for (int j = 0; j < m; ++j) {
    adj = std::max(adj, max_abs(c[j] - a[j].adjoint()));
    sq = std::max({sq, max_abs(linalg::matmul(a[j], a[j])), max_abs(linalg::matmul(c[j], c[j]))});
    for (int k = 0; k < m; ++k) {
      aa = std::max(aa, max_abs(linalg::matmul(a[j], a[k]) + linalg::matmul(a[k], a[j])));
      cc = std::max(cc, max_abs(linalg::matmul(c[j], c[k]) + linalg::matmul(c[k], c[j])));
      const CMatrix anti = linalg::matmul(a[j], c[k]) + linalg::matmul(c[k], a[j]);
      ac = std::max(ac, max_abs(j == k ? CMatrix(anti - id) : anti));
    }
  }
  rep.at_most("car_a_a", aa, car_tol, "CAR relations");
  rep.at_most("car_adag_adag", cc, car_tol, "CAR relations");
  rep.at_most("car_a_adag", ac, car_tol, "CAR relations");
  rep.at_most("ladder_adjointness", adj, cfg.tol("ladder_adjointness", 0.0), "ladder operators");
  rep.at_most("ladder_square_zero", sq, car_tol, "ladder operators");

  double vac = 0.;
  for (int k = 0; k < m; ++k) {
    vac = std::max(vac, space.annihilate_mode(k, space.vacuum()).norm());
    vac = std::max(vac, (space.create_mode(k, space.vacuum()) - space.basis_vector(BasisIndex{1} << k)).norm());
  }
  const double sign_examples =
      (space.annihilate_mode(1, basis(space, {0, 1})) + basis(space, {0})).norm() +
      (space.create_mode(0, basis(space, {1})) - basis(space, {0, 1})).norm() +
      space.create_mode(2, basis(space, {2, 4})).norm();
  rep.at_most("ladder_vacuum", vac, 0.0, "ladder operators");
  rep.at_most("ladder_sign_examples", sign_examples, 0.0, "ladder operators");

  std::uniform_real_distribution<double> amp(0.5, 2.0);
  double fcar = 0., fanti = 0., fdag = 0.;
  for (int i = 0; i < 10; ++i) {
    const GridFunction f = amp(rng) * random_function(spec, rng, Domain::d);
    const GridFunction g = amp(rng) * random_function(spec, rng, Domain::d);
    const CMatrix af = space.ladder(f, LadderKind::annihilate);
    const CMatrix ag = space.ladder(g, LadderKind::annihilate);
    const CMatrix cg = space.ladder(g, LadderKind::create);
    const CMatrix cf = space.ladder(f, LadderKind::create);
    const double s = norm(f) * norm(g);
    fcar = std::max(fcar, max_abs(linalg::matmul(af, cg) + linalg::matmul(cg, af) - inner_product(f, g) * id) / s);
    fanti = std::max({fanti, max_abs(linalg::matmul(af, ag) + linalg::matmul(ag, af)) / s,
                      max_abs(linalg::matmul(cf, cg) + linalg::matmul(cg, cf)) / s});
    fdag = std::max(fdag, max_abs(af.adjoint() - cf));
  }
  rep.at_most("function_car", fcar, car_tol, "CAR relations for a(f), a^+(g)");
  rep.at_most("function_anticommute", fanti, car_tol, "CAR relations for a(f), a(g)");
  rep.at_most("function_adjoint", fdag, car_tol, "ladder operators");

  double norm_err = 0.;
  for (int i = 0; i < 50; ++i) {
    const GridFunction f = amp(rng) * random_function(spec, rng, Domain::d);
    const double nf = norm(f);
    norm_err = std::max(norm_err, std::abs(linalg::operator_norm(space.ladder(f, LadderKind::annihilate)) - nf) / nf);
    norm_err = std::max(norm_err, std::abs(linalg::operator_norm(space.ladder(f, LadderKind::create)) - nf) / nf);
  }
  rep.at_most("ladder_norm", norm_err, car_tol, "norm of a(f) equals norm of f", "50 random f");

  double det_err = 0.;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    FunctionList fs, gs;
    for (int j = 0; j < n; ++j) {
      fs.push_back(random_function(spec, rng, Domain::d));
      gs.push_back(random_function(spec, rng, Domain::d));
    }
    const FockVector wf = space.wedge(fs);
    const FockVector wg = space.wedge(gs);
    const double scale = std::max(wf.norm() * wg.norm(), 1e-300);
    det_err = std::max(det_err, std::abs(linalg::inner(wf, wg) - gram_determinant(fs, gs)) / scale);
  }
  rep.at_most("determinant_identity", det_err, cfg.tol("determinant_identity", 1e-12), "determinant inner product",
              "100 random cases, n <= 4");

  {
    const GridFunction f1 = random_function(spec, rng, Domain::d);
    const GridFunction f2 = random_function(spec, rng, Domain::d);
    const FunctionList dep{f1, f2, f1 + cplx(2.0) * f2};
    const double singular = std::abs(gram_determinant(dep, dep));
    const double repeated = space.wedge(FunctionList{f1, f1}).norm();
    const double swap = (space.wedge(FunctionList{f1, f2}) + space.wedge(FunctionList{f2, f1})).norm();
    rep.at_most("wedge_antisymmetry", std::max({singular, repeated, swap}), 1e-12, "antisymmetry of the wedge product");
  }

  double anti_err = 0.;
  double fact = 1.;
  for (int n = 1; n <= std::min(5, m); ++n) {
    fact *= n;
    FunctionList fs;
    for (int j = 0; j < n; ++j) fs.push_back(random_function(spec, rng, Domain::d));
    const FockVector w = space.wedge(fs);
    anti_err = std::max(anti_err, (std::sqrt(fact) * space.antisymmetrize_oracle(fs) - w).norm() / w.norm());
  }
  rep.at_most("antisymmetrizer_ratio", anti_err, 1e-12, "antisymmetrizer P_a",
              "sqrt(n!) P_a(f_1 x .. x f_n) = a^+(f_1)..a^+(f_n)|0>");

  {
    const CMatrix v = random_matrix(rng, m, 1.0 / std::sqrt(2.0 * m));
    const CMatrix w = random_matrix(rng, m, 1.0 / std::sqrt(2.0 * m));
    const CMatrix gv = space.gamma_lift(v);
    const CMatrix gw = space.gamma_lift(w);
    double err = max_abs(linalg::matmul(gv, gw) - space.gamma_lift(linalg::matmul(v, w)));
    err = std::max(err, max_abs(space.gamma_lift(CMatrix::Identity(m, m)) - id));
    for (int s = 1; s <= 3; ++s)
      err = std::max(err, max_abs(space.gamma_lift(shift_matrix(m, s)) - shift_lift(space, s)));
    rep.at_most("gamma_lift", err, 1e-12, "multiplicative lift of one-particle maps");
  }

  {
    const CMatrix amat = random_matrix(rng, m, 1.0);
    const CMatrix dl = space.derivation_lift(amat);
    const GridFunction f = random_function(spec, rng, Domain::d);
    const GridFunction g = random_function(spec, rng, Domain::d);
    const FockVector lhs = linalg::matvec(dl, space.wedge(FunctionList{f, g}));
    const FockVector rhs =
        space.wedge(FunctionList{apply(amat, f), g}) + space.wedge(FunctionList{f, apply(amat, g)});
    double err = (lhs - rhs).norm() / rhs.norm();
    err = std::max(err, max_abs(space.derivation_lift(CMatrix::Identity(m, m)) - space.number_operator()));
    double one = 0.;
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < m; ++k) one = std::max(one, std::abs(dl(BasisIndex{1} << l, BasisIndex{1} << k) - amat(l, k)));
    rep.at_most("derivation_lift", std::max(err, one), 1e-12, "Leibniz lift of one-particle maps");
  }

  {
    CMatrix q = CMatrix::Zero(d, d);
    for (int k = 0; k < m; ++k) q += linalg::matmul(c[k], a[k]);
    const FockVector j = basis(space, {0, 2, std::min(6, m - 1)});
    const double err = std::max(max_abs(q - space.number_operator()),
                                (linalg::matvec(space.number_operator(), j) - 3.0 * j).norm());
    rep.at_most("number_operator", err, 0.0, "number operator Q");
  }

  double tr_err = 0.;
  double kraus_err = 0.;
  for (int i = 0; i < 10; ++i) {
    const CMatrix rho = random_density(rng, d);
    const CMatrix xi = space.xi_star(rho);
    const cplx tq = linalg::trace_product(space.number_operator(), rho);
    tr_err = std::max(tr_err, std::abs(xi.trace() - tq) / std::abs(tq));
    CMatrix direct = CMatrix::Zero(d, d);
    for (int k = 0; k < m; ++k) direct += linalg::matmul(linalg::matmul(a[k], rho), c[k]);
    kraus_err = std::max(kraus_err, max_abs(xi - direct));
  }
  double proj_err = 0.;
  for (BasisIndex j = 0; j < static_cast<BasisIndex>(d); ++j) {
    CMatrix p = CMatrix::Zero(d, d);
    p(j, j) = 1.0;
    proj_err = std::max(proj_err, std::abs(space.xi_star(p).trace() - static_cast<double>(std::popcount(j))));
  }
  {
    const FockVector v12 = basis(space, {0, 1});
    const CMatrix img = space.xi_star(v12 * v12.adjoint());
    const FockVector v1 = basis(space, {0});
    const FockVector v2 = basis(space, {1});
    proj_err = std::max(proj_err, max_abs(img - v1 * v1.adjoint() - v2 * v2.adjoint()));
    const FockVector vac0 = space.vacuum();
    proj_err = std::max(proj_err, max_abs(space.xi_star(vac0 * vac0.adjoint())));
  }
  rep.at_most("xi_star_trace_identity", tr_err, cfg.tol("xi_star_trace_identity", 1e-12),
              "trace of Xi* equals Tr(Q rho)", "10 random rho");
  rep.at_most("xi_star_projectors", proj_err, cfg.tol("xi_star_projectors", 1e-12),
              "Xi* on n-particle projectors has trace n");
  rep.at_most("xi_star_kraus_form", kraus_err, 1e-12, "Xi* = sum_k a_k rho a_k^+");
  {
    const FockSpace small(cfg.choi_modes);
    const auto s = superop_from_map(small.dim(), [&](const CMatrix& r) { return small.xi_star(r); });
    rep.at_least("xi_star_choi", choi_min_eigenvalue(s), -1e-12, "Xi* is completely positive",
                 "Choi matrix on " + std::to_string(cfg.choi_modes) + " modes");
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport theorem1_suite(const ExperimentConfig& cfg) {
  SuiteReport rep = new_report("theorem1", cfg);
  const int m = cfg.modes;
  const GridSpec spec(m, cfg.spacing);
  const FockSpace space(m);
  auto rng = rng_for(cfg, 2);

  const auto tuples = pairing_tuples(true);
  double worst = 0., cross = 0.;
  for (int i = 0; i < cfg.cases; ++i) {
    const auto [n, mm, p, q] = tuples[i % tuples.size()];
    const RankOneState st = random_state(spec, rng, n, mm);
    const MonomialObservable x = random_monomial(spec, rng, p, q, Domain::d_star);
    const IdentityResidual r = theorem1_residual(spec, st, x);
    worst = std::max(worst, r.relative());
    if (i < 20) {
      Theorem1Options dense;
      dense.backend.dense = &space;
      const IdentityResidual rd = theorem1_residual(spec, st, x, dense);
      if (r.scale > 0) cross = std::max(cross, (std::abs(r.lhs - rd.lhs) + std::abs(r.rhs - rd.rhs)) / r.scale);
    }
  }
  rep.at_most("theorem1_exact", worst, cfg.tol("theorem1_exact", 1e-10), "trace identity for L + Delta",
              std::to_string(cfg.cases) + " random compliant cases, n,m,p,q <= 2, p+q even");
  rep.at_most("theorem1_dense_crosscheck", cross, 1e-12, "trace identity for L + Delta",
              "Gram-determinant pairings against dense Fock vectors");

  const double floor = std::max(worst, 1e-14);
  double weakest = kInf;
  for (int i = 0; i < 20; ++i) {
    const RankOneState st = random_state(spec, rng, 1, 1);
    const MonomialObservable x = random_monomial(spec, rng, 1, 1, Domain::d);
    Theorem1Options opt;
    opt.domain = DomainCheck::skip;
    weakest = std::min(weakest, theorem1_residual(spec, st, x, opt).relative());
  }
  rep.at_least("theorem1_negative_h0", weakest / floor, 100.0, "boundary term needs h(0) = 0",
               "min residual with h(0) != 0 over the compliant floor");
  {
    const RankOneState st = random_state(spec, rng, 1, 1);
    const MonomialObservable x = random_monomial(spec, rng, 1, 1, Domain::d);
    const bool refused = throws_domain_error([&] { theorem1_residual(spec, st, x); });
    rep.at_least("theorem1_domain_refusal", refused ? 1.0 : 0.0, 1.0, "domain hypotheses are enforced");
  }

  double literal = 0., signed_res = 0.;
  const auto odd = pairing_tuples(false);
  for (int i = 0; i < 30; ++i) {
    const auto [n, mm, p, q] = odd[i % odd.size()];
    const RankOneState st = random_state(spec, rng, n, mm);
    const MonomialObservable x = random_monomial(spec, rng, p, q, Domain::d_star);
    literal = std::max(literal, theorem1_residual(spec, st, x).relative());
    Theorem1Options opt;
    opt.delta_sign = -1.0;
    signed_res = std::max(signed_res, theorem1_residual(spec, st, x, opt).relative());
  }
  rep.info("odd_parity_literal_residual", literal, "trace identity for L + Delta",
           "p+q odd: the identity as stated fails");
  rep.at_most("odd_parity_signed_residual", signed_res, 1e-10, "trace identity for L + Delta",
              "p+q odd with Delta weighted by (-1)^(p+q)");

  double star = 0., pos = 0., single = 0., vanish = 0.;
  for (int i = 0; i < 10; ++i) {
    const RankOneState st = random_state(spec, rng, 2, 2);
    const CMatrix lhs = to_dense(space, delta_perturbation(st)).adjoint();
    const CMatrix rhs = to_dense(space, delta_perturbation(RankOneState{st.gs, st.fs}));
    star = std::max(star, max_abs(lhs - rhs));
    const CMatrix pd = to_dense(space, delta_perturbation(RankOneState{st.fs, st.fs}));
    pos = std::min(pos, linalg::min_eigenvalue_hermitian(pd) / std::max(linalg::operator_norm(pd), 1e-300));
    const RankOneState one = random_state(spec, rng, 1, 1);
    const CMatrix d1 = to_dense(space, delta_perturbation(one));
    CMatrix expect = CMatrix::Zero(space.dim(), space.dim());
    expect(0, 0) = one.fs[0].at_origin() * std::conj(one.gs[0].at_origin());
    single = std::max(single, max_abs(d1 - expect));
    const RankOneState zero = random_state(spec, rng, 2, 2);
    RankOneState z = zero;
    for (auto& f : z.fs) f.values()[0] = 0.0;
    vanish = std::max(vanish, trace_norm(delta_perturbation(z)));
  }
  rep.at_most("delta_star_map", star, 1e-14, "Delta is a *-map");
  rep.at_least("delta_positivity", pos, -1e-12, "Delta(|f><f|) is positive");
  rep.at_most("delta_single_particle", single, 1e-14, "Delta on one-particle rank-ones");
  rep.at_most("delta_vanishing_boundary", vanish, 0.0, "Delta vanishes when f(0) = 0");

  {
    const FockSpace small(cfg.choi_modes);
    std::vector<int> grids;
    for (int k = 0; k < 3; ++k) grids.push_back(cfg.sweep_points << k);
    const SemigroupAxiomsReport ax = semigroup_axioms_check(small, cfg.choi_modes, grids, cfg.seed);
    rep.at_most("semigroup_law", ax.semigroup_law_error, 1e-14, "semigroup property of Phi_t");
    rep.at_least("phi_choi", ax.choi_min_eigenvalue, -1e-12, "Phi_t is completely positive");
    rep.at_least("phi_unit_bound", ax.unit_margin, -1e-12, "Phi_t(I) <= I");
    rep.at_most("preadjoint_duality", ax.duality_error, 1e-13, "duality of Psi_t and Phi_t");
    std::vector<double> ps;
    for (int g : grids) ps.push_back(cfg.sweep_extent / g);
    auto table = make_table("weak_continuity", "h", ps, ax.continuity);
    rep.at_least("weak_continuity", table.min_ratio(), kRatioThreshold, "weak continuity of Phi_t",
                 "|Tr(rho Phi_h(x)) - Tr(rho x)| under h-halving");
    rep.tables.push_back(std::move(table));
  }

  double trace_up = -kInf, dual = 0.;
  for (int t = 1; t <= 3; ++t) {
    const CMatrix rho = random_density(rng, space.dim());
    trace_up = std::max(trace_up, std::real(psi(space, {t}, rho).trace() - rho.trace()));
    const CMatrix x = random_matrix(rng, space.dim(), 1.0);
    const cplx l = linalg::trace_product(psi(space, {t}, rho), x);
    const cplx r = linalg::trace_product(rho, phi(space, {t}, x));
    dual = std::max(dual, std::abs(l - r) / (std::abs(l) + std::abs(r)));
  }
  rep.at_most("psi_trace_nonincreasing", trace_up, 1e-12, "Psi_t does not increase the trace");
  rep.at_most("psi_phi_duality", dual, 1e-13, "duality of Psi_t and Phi_t");

  {
    double unital = 0., mult = 0., dual_flow = 0.;
    for (int t = 1; t <= 2; ++t) {
      unital = std::max(unital, max_abs(flow_of_shifts(space, {t}, MonomialObservable{}) -
                                        CMatrix::Identity(space.dim(), space.dim())));
      const int tail = t;
      const MonomialObservable x = random_monomial(spec, rng, 1, 1, Domain::d, tail);
      const MonomialObservable y = random_monomial(spec, rng, 1, 1, Domain::d, tail);
      const CMatrix lift = shift_lift(space, t);
      const CMatrix lhs_x = linalg::matmul(flow_of_shifts(space, {t}, x), lift);
      const CMatrix rhs_x = linalg::matmul(lift, monomial_operator(space, x));
      const CMatrix lhs_y = linalg::matmul(flow_of_shifts(space, {t}, y), lift);
      const CMatrix rhs_y = linalg::matmul(lift, monomial_operator(space, y));
      mult = std::max({mult, max_abs(lhs_x - rhs_x), max_abs(lhs_y - rhs_y)});
      const RankOneState st = random_state(spec, rng, 2, 2, tail);
      RankOneState shifted;
      for (const auto& f : st.fs) shifted.fs.push_back(shift_forward(f, t));
      for (const auto& g : st.gs) shifted.gs.push_back(shift_forward(g, t));
      const cplx lhs = pairing(WedgeOperator(shifted), flow_of_shifts({t}, x));
      const cplx rhs = pairing(WedgeOperator(st), x);
      dual_flow = std::max(dual_flow, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }
    rep.at_most("flow_unital", unital, 0.0, "flow of shifts is unital");
    rep.at_most("flow_intertwines_gamma", mult, 1e-12, "flow of shifts is implemented by Gamma(S_t)",
                "Phi_t(x) Gamma(S_t) = Gamma(S_t) x");
    rep.at_most("flow_duality", dual_flow, 1e-12, "flow of shifts intertwines S_t");
  }

  {
    std::vector<double> params, errors;
    for (int k = 0; k < 4; ++k) {
      const int points = cfg.sweep_points << k;
      const GridSpec g(points, cfg.sweep_extent / points);
      const auto cases = detail::smooth_theorem1_cases(g);
      double err = 0.;
      for (const auto& c : cases) {
        const WedgeOperator rho(c.state);
        const cplx fd = (pairing(psi(TimeIndex{1}, rho), c.x) - pairing(rho, c.x)) / g.spacing;
        err = std::max(err, std::abs(fd - pairing(generator_L(g, c.state), c.x)));
      }
      params.push_back(g.spacing);
      errors.push_back(err);
    }
    auto table = make_table("generator_derivative", "h", params, errors);
    rep.at_least("generator_derivative_order", table.min_ratio(), kRatioThreshold,
                 "generator as the derivative of Psi_t", "first order in h");
    rep.tables.push_back(std::move(table));
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport measure_suite(const ExperimentConfig& cfg) {
  SuiteReport rep = new_report("measure", cfg);
  const int m = cfg.modes;
  const GridSpec spec(m, cfg.spacing);
  const FockSpace space(m);
  auto rng = rng_for(cfg, 3);
  const int usable = m - spec.trailing_cells();

  {
    double zero = trace_norm(measure_star_quadrature(spec, {0, usable}, RankOneState{}));
    const RankOneState st = random_state(spec, rng, 2, 2);
    zero = std::max(zero, trace_norm(measure_star_quadrature(spec, {2, 2}, st)));
    rep.at_most("measure_vacuum_and_empty", zero, 0.0, "M_* of the vacuum and of an empty bin");
  }
  {
    const GridFunction f = random_function(spec, rng, Domain::d);
    double expect = 0.;
    for (int r = 0; r < usable; ++r) expect += spec.spacing * std::norm(f[r]);
    const double got = std::real(trace(measure_star_quadrature(spec, {0, usable}, RankOneState{{f}, {f}})));
    rep.at_most("measure_single_particle_trace", std::abs(got - expect) / expect, 1e-13,
                "M_* on one-particle states");
  }
  {
    double err = 0.;
    for (int i = 0; i < 3; ++i) {
      const RankOneState st = random_state(spec, rng, 2, 2);
      const TimeBin bin{1, usable};
      const CMatrix w = to_dense(space, measure_star_quadrature(spec, bin, st));
      const CMatrix rho = to_dense(space, WedgeOperator(st));
      const CMatrix kr = quadrature_bin(spec, bin).apply_dense(space, rho);
      err = std::max(err, max_abs(w - kr) / max_abs(kr));
    }
    rep.at_most("measure_kraus_form", err, 1e-12, "M_* as a Kraus sum a_0 S_r^*");
  }
  {
    const RankOneState st = random_state(spec, rng, 2, 2);
    const WedgeOperator rho(st);
    const TimeBin bin{0, std::min(4, usable)};
    const WedgeOperator q = measure_star_quadrature(spec, bin, rho);
    const WedgeOperator k = kraus_riemann_sum(spec, bin, bin.width()).apply(rho);
    rep.at_most("kraus_sum_at_cell_width", trace_norm(k - q) / trace_norm(q), 1e-12,
                "Riemann sum of Kraus maps", "delta = h reproduces the quadrature");
  }

  {
    double worst = -kInf, n1 = 0., normalized = -kInf;
    for (const TimeBin bin : {TimeBin{0, usable}, TimeBin{1, usable}, TimeBin{0, usable - 1}, TimeBin{usable / 2, usable}}) {
      const double width = bin.width() * spec.spacing;
      for (int n = 1; n <= bin.width(); ++n) {
        if (bin.width() % n) continue;
        const double lam = qn_norm(space, spec, bin, n);
        worst = std::max(worst, lam / width - 1.0);
        if (n == 1) n1 = std::max(n1, std::abs(lam - width) / width);
        CMatrix qn = CMatrix::Zero(space.dim(), space.dim());
        for (const auto& v : kraus_riemann_sum(spec, bin, n).kraus(space)) qn += linalg::matmul(v.adjoint(), v);
        normalized = std::max(normalized, linalg::max_eigenvalue_hermitian(qn) - 1.0);
      }
    }
    rep.at_most("qn_bound", worst, cfg.tol("qn_bound", 1e-12), "Q_n bound", "lambda_max(Q_n)/(s-t) - 1");
    rep.at_most("qn_single_block", n1, 1e-12, "Q_n bound", "n = 1: ||a^+(chi)a(chi)|| = delta");
    rep.at_most("qn_normalized_contraction", normalized, 1e-12, "Riemann sum of Kraus maps",
                "normalized Kraus family: sum V^+V <= I");
    rep.at_most("qn_zero_width", qn_norm(space, spec, {3, 3}, 1), 0.0, "Q_n bound");
  }

  {
    double trace_up = -kInf;
    for (int i = 0; i < 4; ++i) {
      const CMatrix rho = random_density(rng, space.dim());
      for (const auto& mb : {kraus_riemann_sum(spec, {0, usable - usable % 2}, 2), kraus_riemann_sum(spec, {1, usable}, 1),
                             quadrature_bin(spec, {0, usable})}) {
        const double tr = std::real(mb.apply_dense(space, rho).trace());
        trace_up = std::max(trace_up, tr - 1.0);
      }
    }
    rep.at_most("measure_trace_nonincreasing", trace_up, 1e-10, "M(bin)(I) <= I",
                "Kraus sums and quadrature on random positive rho");
    CMatrix unit = CMatrix::Zero(space.dim(), space.dim());
    for (const auto& k : quadrature_bin(spec, {0, usable}).kraus(space)) unit += linalg::matmul(k.adjoint(), k);
    rep.at_most("measure_unit_bound", linalg::max_eigenvalue_hermitian(unit) - 1.0, 1e-10, "M(bin)(I) <= I");
  }
  {
    const GridSpec small(cfg.choi_modes, cfg.spacing);
    const FockSpace fs(cfg.choi_modes);
    double worst = kInf;
    const int top = cfg.choi_modes - small.trailing_cells();
    for (const auto& mb : {quadrature_bin(small, {0, top}), kraus_riemann_sum(small, {0, 2}, 2),
                           kraus_riemann_sum(small, {0, 2}, 1)}) {
      const auto kr = mb.kraus(fs);
      worst = std::min(worst, choi_min_eigenvalue(schrodinger_from_kraus(kr)));
    }
    rep.at_least("measure_choi", worst, -1e-10, "M(bin) is completely positive");
  }

  {
    double cov = 0., cov_h = 0., cov_dense = 0.;
    for (int i = 0; i < 20; ++i) {
      const int r = 1 + i % 2;
      const RankOneState st = random_state(spec, rng, 1 + i % 2, 1 + (i / 2) % 2, r);
      const TimeBin bin = i % 3 == 0 ? TimeBin{0, 2} : TimeBin{1, 3};
      const auto c = covariance_residual(spec, r, bin, st);
      cov = std::max(cov, c.scale > 0 ? c.residual / c.scale : c.residual);
      const MonomialObservable x = random_monomial(spec, rng, 1, 1, Domain::d);
      const auto ch = covariance_residual_heisenberg(spec, r, bin, st, x);
      cov_h = std::max(cov_h, ch.scale > 0 ? ch.residual / ch.scale : ch.residual);
      if (i < 4) {
        const CMatrix rho = to_dense(space, WedgeOperator(st));
        const CMatrix lhs = quadrature_bin(spec, bin).apply_dense(space, psi(space, {r}, rho));
        const CMatrix rhs = quadrature_bin(spec, bin.shifted(r)).apply_dense(space, rho);
        cov_dense = std::max(cov_dense, max_abs(lhs - rhs) / std::max(max_abs(rhs), 1e-300));
      }
    }
    rep.at_most("covariance", cov, cfg.tol("covariance", 1e-12), "covariance of the measure",
                "trace norm, grid-aligned shifts r = h, 2h");
    rep.at_most("covariance_heisenberg", cov_h, cfg.tol("covariance", 1e-12), "covariance of the measure");
    rep.at_most("covariance_dense", cov_dense, 1e-12, "covariance of the measure", "dense Kraus form");
  }
  {
    double add = 0., monotone = kInf;
    for (int i = 0; i < 10; ++i) {
      const RankOneState st = random_state(spec, rng, 1 + i % 2, 1 + i % 2);
      const MonomialObservable x = random_monomial(spec, rng, 1, 1, Domain::d);
      const int a = 0, b = 1 + i % (usable - 1), c = usable;
      const cplx whole = measure_pairing(spec, {a, c}, st, x);
      const cplx parts = measure_pairing(spec, {a, b}, st, x) + measure_pairing(spec, {b, c}, st, x);
      add = std::max(add, std::abs(whole - parts) / std::max(std::abs(whole), 1e-300));
      const RankOneState pos{st.fs, st.fs};
      double prev = 0.;
      for (int k = 1; k <= usable; ++k) {
        const double v = std::real(measure_pairing(spec, {0, k}, pos, MonomialObservable{}));
        monotone = std::min(monotone, v - prev);
        prev = v;
      }
    }
    rep.at_most("sigma_additivity", add, 1e-13, "sigma-additivity of the measure",
                "pairing over [a,c) against [a,b) + [b,c)");
    rep.at_least("measure_monotone_refinement", monotone, -1e-15, "sigma-additivity of the measure",
                 "Tr M_*([0,k))(|f><f|) is nondecreasing in k");
  }

  {
    auto table = kraus_n_table(cfg, 3);
    rep.at_least("kraus_sum_convergence", table.min_ratio(), kRatioThreshold, "Riemann sum of Kraus maps",
                 "trace-norm distance to the quadrature under n-doubling");
    rep.tables.push_back(std::move(table));
  }
  {
    auto table = mera_t_table(cfg, 3);
    rep.at_least("small_time_link", table.min_ratio(), kRatioThreshold, "small-time limit of M_*",
                 "||(1/t) M_*([0,t)) - Delta||_1 with t = 2h under h-halving");
    rep.tables.push_back(std::move(table));
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport picard_suite(const ExperimentConfig& cfg) {
  SuiteReport rep = new_report("picard", cfg);
  const GridSpec spec(cfg.choi_modes, cfg.spacing);
  const FockSpace space(cfg.choi_modes);
  const Eigen::Index d = space.dim();
  auto rng = rng_for(cfg, 4);

  {
    const double id_choi = linalg::max_eigenvalue_hermitian(superop_to_choi(identity_superop(d)));
    const double id_trace = std::real(superop_to_choi(identity_superop(d)).trace());
    rep.at_most("choi_identity", std::abs(id_choi - d) + std::abs(id_trace - d), 1e-12, "Choi matrix",
                "identity map: rank-one projector times d, trace d");
    rep.at_most("choi_transpose", std::abs(choi_min_eigenvalue(transpose_superop(d)) + 1.0), 1e-12, "Choi matrix",
                "transpose map has Choi eigenvalue -1");
    std::vector<CMatrix> kraus;
    for (int i = 0; i < 3; ++i) kraus.push_back(random_matrix(rng, d, 0.3));
    const ChoiMatrix ch = superop_to_choi(heisenberg_from_kraus(kraus));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (ch + ch.adjoint()));
    const double top = es.eigenvalues().maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()[i] > 1e-9 * top;
    rep.at_least("choi_kraus_psd", es.eigenvalues().minCoeff() / top, -1e-12, "Choi matrix", "random 3-term Kraus map");
    rep.at_most("choi_kraus_rank", rank, 3, "Choi matrix");
    const SuperoperatorMatrix p1 = heisenberg_from_kraus(std::vector<CMatrix>{shift_lift(space, 1).adjoint()});
    const auto self = cp_order_check(p1, p1);
    const auto over_zero = cp_order_check(p1, SuperoperatorMatrix::Zero(d * d, d * d));
    rep.at_least("cp_order_trivial", (self.holds && over_zero.holds) ? 1.0 : 0.0, 1.0, "CP order");
  }

  const auto bins = unit_quadrature_bins(spec, cfg.horizon);
  const PicardTestSet tests = picard_test_set(spec, cfg.seed);
  PicardState conv, literal;
  for (auto variant : {PicardVariant::convolution, PicardVariant::lower_endpoint}) {
    const std::string tag = variant == PicardVariant::convolution ? "convolution" : "lower_endpoint";
    PicardState st = picard_iterate(space, bins, cfg.horizon, {variant, cfg.picard_steps});
    double order = kInf, unit = kInf;
    for (const auto& c : st.certificates) {
      order = std::min(order, c.order_min_eigenvalue);
      unit = std::min(unit, c.unit_margin);
    }
    unit = std::min(unit, st.base_unit_margin);
    rep.at_least("picard_monotone_" + tag, order, cfg.tol("picard_monotone", -1e-10), "Picard monotonicity",
                 std::to_string(cfg.picard_steps) + " steps, min Choi eigenvalue of Phi^{n+1} - Phi^n");
    rep.at_least("picard_unit_bound_" + tag, unit, cfg.tol("picard_unit_bound", -1e-10), "Phi^n_t(I) <= I");
    (variant == PicardVariant::convolution ? conv : literal) = std::move(st);
  }

  const double floor = cfg.tol("picard_limit_matches_flow", 1e-10);
  rep.at_most("picard_limit_matches_flow", picard_reference_gap(space, conv, conv.iterates.size() - 1, tests),
              floor, "integral equation for the flow of shifts",
              "convolution limit against the flow of shifts on the monomial test set");
  rep.info("lower_endpoint_gap_to_flow", picard_reference_gap(space, literal, literal.iterates.size() - 1, tests),
           "integral equation for the flow of shifts", "recursion with Phi^n_lo instead of Phi^n_{t-lo}");
  {
    double diff = 0.;
    for (int t = 0; t <= cfg.horizon; ++t) diff = std::max(diff, max_abs(conv.limit()[t] - literal.limit()[t]));
    rep.info("variant_disagreement", diff, "Picard iteration", "max entry of the difference of the two limits");
  }

  {
    const MinimalityReport mr = minimality_report(space, conv, tests);
    rep.at_least("minimality_prefixes", mr.prefix_min_eigenvalue, -1e-10, "minimal solution",
                 "limit dominates every Picard prefix in CP order");
    rep.at_most("minimality_limit_unital", mr.limit_unit_error, 1e-12, "minimal solution",
                "limit is unital, so no smaller sub-unital solution exists");
    rep.info("minimality_base_gap", mr.base_gap, "minimal solution", "limit against the unperturbed Phi_t");
  }
  {
    const PicardState zero = picard_iterate(space, {}, cfg.horizon, {PicardVariant::convolution, 3});
    double err = 0.;
    for (const auto& it : zero.iterates)
      for (int t = 0; t <= cfg.horizon; ++t) err = std::max(err, max_abs(it[t] - zero.iterates.front()[t]));
    rep.at_most("picard_zero_measure", err, 0.0, "Picard iteration", "zero measure keeps Phi_t");
  }
  {
    auto table = picard_n_table(space, conv, tests, std::min(cfg.picard_steps, 6));
    const bool ok = table.verdict == "monotone";
    rep.at_least("picard_error_monotone", ok ? 1.0 : 0.0, 1.0, "Picard iteration",
                 "gap to the flow of shifts is non-increasing and reaches the floor");
    rep.tables.push_back(std::move(table));
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport theorem2_suite(const ExperimentConfig& cfg) {
  SuiteReport rep = new_report("theorem2", cfg);
  const int m = cfg.modes;
  const GridSpec spec(m, cfg.spacing);
  const FockSpace space(m);
  auto rng = rng_for(cfg, 5);
  const int max_t = std::min(3, m - spec.trailing_cells() - 2);

  const auto tuples = pairing_tuples(true);
  double worst = 0., cross = 0.;
  const int cases = std::min(cfg.cases, 100);
  for (int i = 0; i < cases; ++i) {
    const auto [n, mm, p, q] = tuples[i % tuples.size()];
    const int t = 1 + i % max_t;
    const RankOneState st = random_state(spec, rng, n, mm);
    const MonomialObservable x = random_monomial(spec, rng, p, q, Domain::d, t);
    const IdentityResidual r = integral_equation_residual(spec, {t}, st, x);
    worst = std::max(worst, r.relative());
    if (i < 10) {
      IntegralEquationOptions o;
      o.backend.dense = &space;
      const IdentityResidual rd = integral_equation_residual(spec, {t}, st, x, o);
      if (r.scale > 0) cross = std::max(cross, (std::abs(r.lhs - rd.lhs) + std::abs(r.rhs - rd.rhs)) / r.scale);
    }
  }
  rep.at_most("theorem2_residual", worst, cfg.tol("theorem2_residual", 1e-10),
              "integral equation for the flow of shifts", "random cases, p+q even, t = h..3h");
  rep.at_most("theorem2_dense_crosscheck", cross, 1e-12, "integral equation for the flow of shifts");

  {
    const RankOneState st = random_state(spec, rng, 2, 2);
    const MonomialObservable x = random_monomial(spec, rng, 1, 1, Domain::d);
    rep.at_most("theorem2_t0", std::abs(integral_equation_residual(spec, {0}, st, x).residual), 0.0,
                "integral equation for the flow of shifts", "t = 0: empty integral");
    const MonomialObservable wide = random_monomial(spec, rng, 1, 1, Domain::d);
    const bool refused = throws_domain_error([&] { integral_equation_residual(spec, {2}, st, wide); });
    rep.at_least("theorem2_domain_refusal", refused ? 1.0 : 0.0, 1.0, "domain hypotheses are enforced");
  }

  const double floor = std::max(worst, 1e-14);
  double weakest = kInf, literal = 0., signed_res = 0.;
  for (int i = 0; i < 10; ++i) {
    const int t = 1 + i % max_t;
    const RankOneState st = random_state(spec, rng, 1, 1);
    const MonomialObservable x = random_monomial(spec, rng, 1, 1, Domain::d, t);
    IntegralEquationOptions zero;
    zero.zero_measure = true;
    weakest = std::min(weakest, integral_equation_residual(spec, {t}, st, x, zero).relative());
  }
  rep.at_least("theorem2_zero_measure", weakest / floor, 100.0, "integral equation for the flow of shifts",
               "without the measure the residual stays away from the floor");
  const auto odd = pairing_tuples(false);
  for (int i = 0; i < 20; ++i) {
    const auto [n, mm, p, q] = odd[i % odd.size()];
    const int t = 1 + i % max_t;
    const RankOneState st = random_state(spec, rng, n, mm);
    const MonomialObservable x = random_monomial(spec, rng, p, q, Domain::d, t);
    const IdentityResidual r = integral_equation_residual(spec, {t}, st, x);
    IntegralEquationOptions zero;
    zero.zero_measure = true;
    const IdentityResidual z = integral_equation_residual(spec, {t}, st, x, zero);
    literal = std::max(literal, r.relative());
    // measure term with the opposite sign: lhs + middle - base = 2z - r
    const cplx flipped = 2.0 * z.residual - r.residual;
    if (r.scale > 0) signed_res = std::max(signed_res, std::abs(flipped) / r.scale);
  }
  rep.info("odd_parity_literal_residual", literal, "integral equation for the flow of shifts",
           "p+q odd: the equation as stated fails");
  rep.at_most("odd_parity_signed_residual", signed_res, 1e-10, "integral equation for the flow of shifts",
              "p+q odd with the measure weighted by (-1)^(p+q)");

  {
    auto table = theorem2_h_table(cfg, 3);
    rep.at_most("theorem2_h_convergence", table.max_error(), kExactFloor,
                "integral equation for the flow of shifts",
                "smooth one-particle data under h-halving; residual at the floor on every grid");
    rep.tables.push_back(std::move(table));
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport no_event_suite(const ExperimentConfig& cfg) {
  SuiteReport rep = new_report("no_event", cfg);
  auto rng = rng_for(cfg, 6);
  const OpenSystem sys = random_open_system(4, 2, 0.2, cfg.seed + 6);
  const OpenSystem tight = random_open_system(4, 2, 0.0, cfg.seed + 7);
  const OpenSystem qubit = qubit_decay(1.0);
  const int d = 4;

  {
    double contraction = 0.;
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0})
      contraction = std::max(contraction, linalg::operator_norm(contraction_semigroup(sys.k, t)) - 1.0);
    rep.at_most("contraction", contraction, 1e-12, "dissipative K generates contractions");
    rep.at_most("admissibility", admissibility_margin(sys.k, sys.ls), 1e-12, "admissibility of the couplings");
    double slack = -kInf;
    for (int i = 0; i < 100; ++i) {
      CVector psi = random_matrix(rng, d, 1.0).col(0);
      double lhs = 0.;
      for (const auto& l : sys.ls) lhs += (l * psi).squaredNorm();
      slack = std::max(slack, lhs + 2.0 * std::real(linalg::inner(psi, sys.k * psi)));
    }
    rep.at_most("admissibility_vectors", slack, 1e-12, "admissibility of the couplings", "100 random psi");
  }
  {
    const CMatrix rho = random_density(rng, d);
    double err = max_abs(no_event_evolve(0.0, sys.k, rho) - rho);
    const CVector psi = random_matrix(rng, d, 1.0).col(0);
    double rank = 0.;
    for (double t : {0.3, 1.0, 3.0}) {
      const CMatrix out = no_event_evolve(t, sys.k, psi * psi.adjoint());
      Eigen::JacobiSVD<CMatrix> svd(out);
      rank = std::max(rank, svd.singularValues()[1] / svd.singularValues()[0]);
    }
    CMatrix one = CMatrix::Zero(2, 2);
    one(1, 1) = 1.0;
    const double decay = std::abs(std::real(no_event_evolve(std::log(4.0), qubit.k, one).trace()) - 0.25);
    rep.at_most("no_event_identity", err, 1e-14, "no-event semigroup");
    rep.at_most("no_event_pure_states", rank, 1e-12, "no-event semigroup maps pure states to pure states");
    rep.at_most("no_event_qubit_decay", decay, 1e-14, "no-event semigroup", "Tr Psi_t(|1><1|) = e^{-t}");
  }
  {
    double block = kInf, trace_slack = -kInf, tight_gap = 0.;
    std::vector<CVector> vs;
    for (int i = 0; i < 3; ++i) vs.push_back(random_matrix(rng, d, 1.0).col(0));
    CMatrix big(3 * d, 3 * d);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) big.block(j * d, k * d, d, d) = delta_from_couplings(sys.ls, vs[j], vs[k]);
    block = linalg::min_eigenvalue_hermitian(big);
    for (int i = 0; i < 20; ++i) {
      const CVector psi = random_matrix(rng, d, 1.0).col(0);
      const CMatrix rho = psi * psi.adjoint();
      const double td = std::real(delta_from_couplings(sys.ls, psi, psi).trace());
      trace_slack = std::max(trace_slack, td + std::real(no_event_generator(sys.k, rho).trace()));
      const double tdt = std::real(delta_star(tight.ls, rho).trace());
      tight_gap = std::max(tight_gap, std::abs(tdt + std::real(no_event_generator(tight.k, rho).trace())) /
                                          std::max(tdt, 1e-300));
    }
    rep.at_least("delta_block_positivity", block, -1e-12, "Delta is completely positive");
    rep.at_most("delta_trace_condition", trace_slack, 1e-12, "Tr Delta(rho) <= -Tr L(rho)");
    rep.at_most("delta_trace_tight", tight_gap, 1e-12, "Tr Delta(rho) <= -Tr L(rho)", "equality when admissibility is tight");
  }
  {
    const SuperoperatorMatrix lyap = theta_superop(sys.k, sys.ls, ThetaMethod::lyapunov);
    const SuperoperatorMatrix quad = theta_superop(sys.k, sys.ls, ThetaMethod::quadrature);
    rep.at_most("theta_methods_agree", max_abs(lyap - quad), cfg.tol("theta_methods_agree", 1e-8),
                "excessive map Theta", "Lyapunov solve against quadrature");
    rep.at_least("theta_cp", choi_min_eigenvalue(lyap), -1e-10, "excessive map Theta");
    double excess = kInf;
    for (double t : {0.1, 0.5, 1.0, 2.0}) excess = std::min(excess, choi_min_eigenvalue(lyap - no_event_phi(sys.k, t) * lyap));
    rep.at_least("theta_excessive", excess, -1e-10, "excessive map Theta", "Theta > Phi_t o Theta, 4 times");
    rep.at_most("theta_zero", max_abs(theta_excessive(sys.k, sys.ls, CMatrix::Zero(d, d), ThetaMethod::lyapunov)), 0.0,
                "excessive map Theta");

    const SuperoperatorMatrix m6 = measure_from_theta(sys.k, sys.ls, 0.3, 1.1, ThetaMethod::lyapunov);
    const SuperoperatorMatrix m1 = measure_eq1_quadrature(sys.k, sys.ls, 0.3, 1.1);
    double eq = max_abs(m6 - m1);
    const SuperoperatorMatrix q6 = measure_from_theta(qubit.k, qubit.ls, 0.2, 1.7, ThetaMethod::quadrature);
    eq = std::max(eq, max_abs(q6 - measure_eq1_quadrature(qubit.k, qubit.ls, 0.2, 1.7)));
    rep.at_most("measure_theta_vs_quadrature", eq, cfg.tol("measure_theta_vs_quadrature", 1e-8), "measure from Theta",
                "Phi_t Theta - Phi_s Theta against int_t^s Phi_r Delta^* dr");
    rep.at_least("measure_theta_cp", choi_min_eigenvalue(m6), -1e-10, "measure from Theta");
    const SuperoperatorMatrix a = measure_from_theta(sys.k, sys.ls, 0.3, 0.7, ThetaMethod::lyapunov);
    const SuperoperatorMatrix b = measure_from_theta(sys.k, sys.ls, 0.7, 1.1, ThetaMethod::lyapunov);
    rep.at_most("measure_theta_additivity", max_abs(a + b - m6), 1e-12, "measure from Theta");
    rep.at_most("measure_theta_empty", max_abs(measure_from_theta(sys.k, sys.ls, 0.5, 0.5, ThetaMethod::lyapunov)), 0.0,
                "measure from Theta");
    const SuperoperatorMatrix shifted = measure_from_theta(sys.k, sys.ls, 0.8, 1.6, ThetaMethod::lyapunov);
    rep.at_most("measure_theta_covariance", max_abs(no_event_phi(sys.k, 0.5) * m6 - shifted), 1e-12,
                "covariance of the measure");
  }
  {
    CMatrix id = CMatrix::Identity(2, 2);
    const bool refused = throws_domain_error([&] { theta_excessive(qubit.k, qubit.ls, id, ThetaMethod::lyapunov); });
    rep.at_least("qubit_sylvester_singular", refused ? 1.0 : 0.0, 1.0, "excessive map Theta",
                 "K has a kernel, the Lyapunov solve is refused");
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(1, 1) = 1.0;
    rep.at_most("qubit_theta_identity", max_abs(theta_excessive(qubit.k, qubit.ls, id, ThetaMethod::quadrature) - expect),
                cfg.tol("qubit_theta_identity", 1e-10), "excessive map Theta", "Theta(I) = |1><1|");
  }
  return rep;
}

}  // namespace carlab::harness
