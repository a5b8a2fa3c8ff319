#include <doctest.h>

#include "carlab/grid.hpp"

using namespace carlab;

TEST_CASE("grid inner product and trailing cells") {
  const GridSpec spec(8, 0.5);
  CHECK(spec.trailing_cells() == 1);
  CHECK(GridSpec(32, 0.1).trailing_cells() == 4);
  GridFunction f(spec), g(spec);
  f.values()[0] = cplx(0, 1);
  g.values()[0] = 2.0;
  f.values()[3] = 1.0;
  g.values()[3] = cplx(1, 1);
  // 0.5 * (conj(i)*2 + 1*(1+i))
  CHECK(std::abs(inner_product(f, g) - 0.5 * (cplx(0, -2) + cplx(1, 1))) < 1e-15);
  CHECK(std::abs(norm(f) - 1.0) < 1e-15);
  CHECK((f.modes() - std::sqrt(0.5) * f.values()).norm() < 1e-15);
  CHECK((GridFunction::from_modes(spec, f.modes()).values() - f.values()).norm() < 1e-15);
}

TEST_CASE("summation by parts is exact") {
  std::mt19937_64 rng(3);
  for (int m : {4, 8, 33}) {
    const GridSpec spec(m, 0.37);
    for (int i = 0; i < 5; ++i) {
      GridFunction f = random_function(spec, rng, Domain::d);
      GridFunction g = random_function(spec, rng, Domain::d);
      f.values()[m - 1] = cplx(0.4, 0.2);  // boundary term at the right edge too
      const cplx df = inner_product(diff_forward(f), g);
      const cplx bg = inner_product(f, diff_backward_interior(g));
      const cplx boundary = std::conj(f[0]) * g[0] - std::conj(f[m - 1]) * g[m - 1];
      CHECK(std::abs(df + bg + boundary) < 1e-12);
      CHECK(std::abs(ibp_residual(f, g)) < 1e-12);
    }
  }
}

TEST_CASE("shifts are adjoint and match their matrices") {
  std::mt19937_64 rng(4);
  const GridSpec spec(16, 0.25);
  GridFunction f = random_function(spec, rng, Domain::d);
  const GridFunction g = random_function(spec, rng, Domain::d);
  f.values()[13] = 0.0;
  for (int m = 0; m < 4; ++m) {
    CHECK(std::abs(inner_product(shift_forward(f, m), g) - inner_product(f, shift_adjoint(g, m))) < 1e-14);
    CHECK((carlab::apply(shift_matrix(16, m), f).values() - shift_forward(f, m).values()).norm() < 1e-15);
    CHECK((carlab::apply(shift_adjoint_matrix(16, m), f).values() - shift_adjoint(f, m).values()).norm() < 1e-15);
    // isometric on functions that vanish on the last m cells
    CHECK(std::abs(norm(shift_forward(f, m)) - norm(f)) < 1e-14);
  }
  CHECK(shift_forward(f, 2)[0] == cplx{});
  CHECK(shift_forward(f, 2)[5] == f[3]);
  CHECK((carlab::apply(diff_forward_matrix(spec), f).values() - diff_forward(f).values()).norm() < 1e-12);
  CHECK((carlab::apply(diff_backward_matrix(spec), f).values() - diff_backward_interior(f).values()).norm() < 1e-12);
}

TEST_CASE("domains and test functions") {
  std::mt19937_64 rng(5);
  const GridSpec spec(32, 0.125);
  const GridFunction fd = random_function(spec, rng, Domain::d);
  const GridFunction fs = random_function(spec, rng, Domain::d_star);
  CHECK(satisfies(fd, Domain::d));
  CHECK_FALSE(satisfies(fd, Domain::d_star));
  CHECK(satisfies(fs, Domain::d_star));
  CHECK(std::abs(norm(fd) - 1.0) < 1e-14);
  CHECK(vanishes_on_trailing(fd, spec.trailing_cells()));

  TestFunctionParams p;
  p.center = 1.0;
  p.width = 0.5;
  const GridFunction b = make_test_function(spec, TestFunctionKind::bump_D_dstar, p);
  CHECK(satisfies(b, Domain::d_star));
  CHECK(std::abs(b[8] - 1.0) < 1e-14);  // peak at the centre, x = 1
  p.center = 3.8;
  CHECK_THROWS_AS(make_test_function(spec, TestFunctionKind::bump_D_d, p), std::invalid_argument);
  p.center = 0.2;
  CHECK_THROWS_AS(make_test_function(spec, TestFunctionKind::bump_D_dstar, p), std::invalid_argument);
  TestFunctionParams q;
  q.delta = 0.5;
  const GridFunction ind = make_test_function(spec, TestFunctionKind::indicator, q);
  CHECK(std::abs(norm(ind) * norm(ind) - 0.5) < 1e-14);
}
