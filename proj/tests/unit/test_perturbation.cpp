#include <doctest.h>

#include "carlab/harness/suites.hpp"
#include "carlab/perturbation.hpp"
#include "carlab/shift.hpp"

using namespace carlab;

TEST_CASE("Picard iteration on four modes converges to the flow of shifts") {
  const GridSpec spec(4, 0.5);  // three usable cells, one trailing
  const FockSpace space(4);
  const auto bins = unit_quadrature_bins(spec, 3);
  REQUIRE(bins.size() == 3);
  const PicardState st = picard_iterate(space, bins, 3, {PicardVariant::convolution, 4});
  CHECK(st.iterates.size() == 5);
  for (const auto& c : st.certificates) {
    CHECK(c.order_min_eigenvalue > -1e-12);
    CHECK(c.unit_margin > -1e-12);
  }
  const auto tests = harness::picard_test_set(spec, 1);
  CHECK(picard_reference_gap(space, st, st.iterates.size() - 1, tests) < 1e-12);
  const auto mr = minimality_report(space, st, tests);
  CHECK(mr.prefix_min_eigenvalue > -1e-12);
  CHECK(mr.limit_unit_error < 1e-12);
}

TEST_CASE("zero measure leaves the base semigroup") {
  const FockSpace space(3);
  const PicardState st = picard_iterate(space, {}, 3, {PicardVariant::convolution, 2});
  for (int t = 0; t <= 3; ++t) CHECK((st.iterates[2][t] - st.iterates[0][t]).norm() == 0.0);
  CHECK(st.iterates[0][0].isIdentity());
}

TEST_CASE("integral equation residual") {
  std::mt19937_64 rng(40);
  const GridSpec spec(8, 0.25);
  const FockSpace space(8);
  GridFunction h = random_function(spec, rng, Domain::d), e = random_function(spec, rng, Domain::d);
  for (int i = 5; i < 7; ++i) h.values()[i] = e.values()[i] = 0.0;
  const MonomialObservable x{{h}, {e}};
  const RankOneState st{{random_function(spec, rng, Domain::d)}, {random_function(spec, rng, Domain::d)}};
  CHECK(integral_equation_residual(spec, {2}, st, x).relative() < 1e-12);
  IntegralEquationOptions dense;
  dense.backend.dense = &space;
  CHECK(integral_equation_residual(spec, {2}, st, x, dense).relative() < 1e-12);
  IntegralEquationOptions zero;
  zero.zero_measure = true;
  CHECK(integral_equation_residual(spec, {2}, st, x, zero).relative() > 1e-6);
  CHECK(max_compliant_shift(x) == 2);
  CHECK_THROWS_AS(integral_equation_residual(spec, {3}, st, x), std::domain_error);
}
