#include <doctest.h>

#include "carlab/shift.hpp"

using namespace carlab;

namespace {

FunctionList random_list(const GridSpec& spec, std::mt19937_64& rng, int n, Domain d) {
  FunctionList out;
  for (int i = 0; i < n; ++i) out.push_back(random_function(spec, rng, d));
  return out;
}

}  // namespace

TEST_CASE("shift lift is the second quantized shift") {
  const FockSpace space(5);
  for (int m = 0; m <= 5; ++m) CHECK((shift_lift(space, m) - space.gamma_lift(shift_matrix(5, m))).norm() == 0.0);
  // Psi and Phi are dual
  std::mt19937_64 rng(20);
  const CMatrix rho = CMatrix::Random(32, 32), x = CMatrix::Random(32, 32);
  CHECK(std::abs((psi(space, {2}, rho) * x).trace() - (rho * phi(space, {2}, x)).trace()) < 1e-12);
}

TEST_CASE("trace identity holds exactly for the adjoint pair") {
  std::mt19937_64 rng(21);
  const GridSpec spec(8, 0.3);
  const FockSpace space(8);
  for (int i = 0; i < 20; ++i) {
    const RankOneState st{random_list(spec, rng, 1 + i % 2, Domain::d), random_list(spec, rng, 1 + i % 2, Domain::d)};
    const MonomialObservable x{random_list(spec, rng, 1, Domain::d_star), random_list(spec, rng, 1, Domain::d_star)};
    CHECK(theorem1_residual(spec, st, x).relative() < 1e-12);
    Theorem1Options dense;
    dense.backend.dense = &space;
    CHECK(theorem1_residual(spec, st, x, dense).relative() < 1e-12);
    Theorem1Options naive;
    naive.scheme = DifferenceScheme::same_side;
    CHECK(theorem1_residual(spec, st, x, naive).relative() > 1e-6);
  }
}

TEST_CASE("Delta and the generator on one particle") {
  std::mt19937_64 rng(22);
  const GridSpec spec(6, 0.5);
  const FockSpace space(6);
  const GridFunction f = random_function(spec, rng, Domain::d);
  const GridFunction g = random_function(spec, rng, Domain::d);
  const RankOneState st{{f}, {g}};
  const CMatrix d = to_dense(space, delta_perturbation(st));
  CHECK(std::abs(d(0, 0) - f[0] * std::conj(g[0])) < 1e-14);
  CHECK(std::abs(d.norm() - std::abs(d(0, 0))) < 1e-14);
  // L(|f><g|) = |Df><g| + |f><B g| with the adjoint pair
  const CMatrix l = to_dense(space, generator_L(spec, st));
  const CMatrix expect = to_dense(space, WedgeOperator(RankOneState{{diff_forward(f)}, {g}})) +
                         to_dense(space, WedgeOperator(RankOneState{{f}, {diff_backward_interior(g)}}));
  CHECK((l - expect).norm() < 1e-13);
}

TEST_CASE("domain checks refuse non-compliant data") {
  std::mt19937_64 rng(23);
  const GridSpec spec(8, 0.3);
  GridFunction f = random_function(spec, rng, Domain::d);
  f.values()[7] = 1.0;
  CHECK_THROWS_AS(require_state_domain(RankOneState{{f}, {f}}), std::domain_error);
  const GridFunction h = random_function(spec, rng, Domain::d);
  CHECK_THROWS_AS(require_monomial_domain(MonomialObservable{{h}, {}}, Domain::d_star), std::domain_error);
  CHECK_NOTHROW(require_monomial_domain(MonomialObservable{{h}, {}}, Domain::d));
  CHECK_THROWS_AS(require_monomial_domain(MonomialObservable{{h}, {}}, Domain::d, 2), std::domain_error);
}

TEST_CASE("semigroup axioms on four modes") {
  const FockSpace space(4);
  const auto r = semigroup_axioms_check(space, 4, {16, 32, 64}, 7);
  CHECK(r.semigroup_law_error < 1e-14);
  CHECK(r.choi_min_eigenvalue > -1e-12);
  CHECK(r.unit_margin > -1e-12);
  CHECK(r.duality_error < 1e-13);
  REQUIRE(r.continuity.size() == 3);
  CHECK(r.continuity[2] < r.continuity[0]);
}
