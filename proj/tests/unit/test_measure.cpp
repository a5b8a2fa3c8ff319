#include <doctest.h>

#include "carlab/measure.hpp"
#include "carlab/shift.hpp"

using namespace carlab;

TEST_CASE("quadrature measure on one particle") {
  std::mt19937_64 rng(30);
  const GridSpec spec(8, 0.25);
  const FockSpace space(8);
  const GridFunction f = random_function(spec, rng, Domain::d);
  const GridFunction g = random_function(spec, rng, Domain::d);
  const WedgeOperator out = measure_star_quadrature(spec, {1, 4}, RankOneState{{f}, {g}});
  cplx expect{};
  for (int r = 1; r < 4; ++r) expect += spec.spacing * f[r] * std::conj(g[r]);
  const CMatrix dense = to_dense(space, out);
  CHECK(std::abs(dense(0, 0) - expect) < 1e-14);
  CHECK(std::abs(dense.trace() - expect) < 1e-14);
  CHECK(trace_norm(measure_star_quadrature(spec, {3, 3}, RankOneState{{f}, {g}})) == 0.0);
  CHECK_THROWS(require_bin(spec, {5, 4}));
  CHECK_THROWS(require_bin(spec, {0, 9}));
}

TEST_CASE("Kraus Riemann sums") {
  std::mt19937_64 rng(31);
  const GridSpec spec(8, 0.25);
  const FockSpace space(8);
  const RankOneState st{{random_function(spec, rng, Domain::d), random_function(spec, rng, Domain::d)},
                        {random_function(spec, rng, Domain::d), random_function(spec, rng, Domain::d)}};
  const WedgeOperator rho(st);
  const TimeBin bin{0, 4};
  CHECK(trace_norm(kraus_riemann_sum(spec, bin, 4).apply(rho) - measure_star_quadrature(spec, bin, rho)) < 1e-13);
  CHECK_THROWS(kraus_riemann_sum(spec, bin, 3));
  for (int n : {1, 2, 4}) {
    const double lam = qn_norm(space, spec, bin, n);
    CHECK(lam <= bin.width() * spec.spacing * (1 + 1e-12));
    const auto mb = kraus_riemann_sum(spec, bin, n);
    const CMatrix dense_rho = to_dense(space, rho);
    CHECK((mb.apply_dense(space, dense_rho) - to_dense(space, mb.apply(rho))).norm() < 1e-13);
  }
  CHECK(std::abs(qn_norm(space, spec, bin, 1) - 1.0) < 1e-12);
}

TEST_CASE("covariance and additivity") {
  std::mt19937_64 rng(32);
  const GridSpec spec(8, 0.25);
  GridFunction f = random_function(spec, rng, Domain::d), g = random_function(spec, rng, Domain::d);
  f.values()[6] = g.values()[6] = 0.0;
  f.values()[5] = g.values()[5] = 0.0;
  const RankOneState st{{f}, {g}};
  const auto c = covariance_residual(spec, 2, {0, 2}, st);
  CHECK(c.residual <= 1e-13 * std::max(c.scale, 1.0));
  const MonomialObservable x{{random_function(spec, rng, Domain::d)}, {random_function(spec, rng, Domain::d)}};
  const cplx whole = measure_pairing(spec, {0, 6}, st, x);
  const cplx parts = measure_pairing(spec, {0, 2}, st, x) + measure_pairing(spec, {2, 6}, st, x);
  CHECK(std::abs(whole - parts) < 1e-14);
  const FockSpace space(8);
  CHECK(std::abs(measure_pairing(space, spec, {0, 6}, st, monomial_operator(space, x)) - whole) < 1e-13);
}

TEST_CASE("small-time link decreases with t") {
  const GridSpec coarse(32, 0.125), fine(64, 0.0625);
  TestFunctionParams p;
  p.center = 0.0;
  p.width = 1.5;
  const RankOneState a{{make_test_function(coarse, TestFunctionKind::bump_D_d, p)},
                       {make_test_function(coarse, TestFunctionKind::bump_D_d, p)}};
  const RankOneState b{{make_test_function(fine, TestFunctionKind::bump_D_d, p)},
                       {make_test_function(fine, TestFunctionKind::bump_D_d, p)}};
  const double ea = small_time_link(coarse, a, {2});
  const double eb = small_time_link(fine, b, {2});
  CHECK(eb < 0.6 * ea);
}
