#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "carlab/fock.hpp"
#include "carlab/shift.hpp"

using namespace carlab;

namespace {

// Jordan-Wigner: a_k = I x .. x sigma_- (mode k) x Z x .. x Z (modes below k);
// the leftmost Kronecker factor is the highest mode, matching bit k of the index.
CMatrix jordan_wigner(int modes, int k) {
  CMatrix lower(2, 2), z(2, 2), id = CMatrix::Identity(2, 2);
  lower << 0, 1, 0, 0;
  z << 1, 0, 0, -1;
  CMatrix out = CMatrix::Identity(1, 1);
  for (int j = modes - 1; j >= 0; --j) {
    const CMatrix& factor = j == k ? lower : (j < k ? z : id);
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

CMatrix random_matrix(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  CMatrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      const double re = g(rng);
      m(i, j) = cplx(re, g(rng));
    }
  return m;
}

}  // namespace

TEST_CASE("ladder operators match the Jordan-Wigner construction") {
  for (int m : {1, 3, 5}) {
    const FockSpace space(m);
    for (int k = 0; k < m; ++k) {
      const CMatrix jw = jordan_wigner(m, k);
      CHECK((space.annihilator(k) - jw).norm() == 0.0);
      CHECK((space.creator(k) - jw.adjoint()).norm() == 0.0);
    }
  }
}

TEST_CASE("ordering sign and basis examples") {
  CHECK(ordering_sign(0b0110, 0) == 1);
  CHECK(ordering_sign(0b0110, 2) == -1);
  CHECK(ordering_sign(0b0110, 3) == 1);
  const std::vector<int> modes{0, 2, 3};
  CHECK(occupation_mask(modes) == 0b1101u);
  const FockSpace space(4);
  // a_2 |{1,2}> = -|{1}> in 1-based labels
  CHECK((space.annihilate_mode(1, space.basis_vector(0b11)) + space.basis_vector(0b01)).norm() == 0.0);
  CHECK((space.create_mode(0, space.basis_vector(0b10)) - space.basis_vector(0b11)).norm() == 0.0);
  CHECK(space.create_mode(1, space.basis_vector(0b10)).norm() == 0.0);
  CHECK_THROWS(FockSpace(13));
  CHECK_THROWS(space.annihilator(4));
}

TEST_CASE("function ladders are linear combinations of mode ladders") {
  std::mt19937_64 rng(6);
  const GridSpec spec(4, 0.3);
  const FockSpace space(4);
  const GridFunction f = random_function(spec, rng, Domain::d);
  CMatrix expect = CMatrix::Zero(space.dim(), space.dim());
  for (int k = 0; k < 4; ++k) expect += std::conj(f.modes()[k]) * space.annihilator(k);
  CHECK((space.ladder(f, LadderKind::annihilate) - expect).norm() < 1e-14);
  CHECK((space.ladder(f, LadderKind::create) - expect.adjoint()).norm() < 1e-14);
  const FockVector v = random_matrix(rng, 16).col(0);
  CHECK((space.apply_ladder(f, LadderKind::create, v) - expect.adjoint() * v).norm() < 1e-13);
  const GridFunction wrong = random_function(GridSpec(5, 0.3), rng, Domain::d);
  CHECK_THROWS(space.ladder(wrong, LadderKind::create));
}

TEST_CASE("wedge products, Gram determinants and the antisymmetrizer") {
  std::mt19937_64 rng(7);
  const GridSpec spec(6, 0.5);
  const FockSpace space(6);
  for (int n = 1; n <= 4; ++n) {
    std::vector<GridFunction> fs, gs;
    for (int i = 0; i < n; ++i) {
      fs.push_back(random_function(spec, rng, Domain::d));
      gs.push_back(random_function(spec, rng, Domain::d));
    }
    const FockVector wf = space.wedge(fs), wg = space.wedge(gs);
    CHECK(std::abs(wf.dot(wg) - gram_determinant(fs, gs)) < 1e-13);
    double fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    CHECK((std::sqrt(fact) * space.antisymmetrize_oracle(fs) - wf).norm() < 1e-13);
  }
  // two-particle Gram by hand
  const GridFunction f1 = random_function(spec, rng, Domain::d), f2 = random_function(spec, rng, Domain::d);
  const std::vector<GridFunction> two{f1, f2};
  const cplx det = inner_product(f1, f1) * inner_product(f2, f2) - inner_product(f1, f2) * inner_product(f2, f1);
  CHECK(std::abs(gram_determinant(two, two) - det) < 1e-14);
  CHECK(std::abs(space.wedge(two).squaredNorm() - det.real()) < 1e-13);
}

TEST_CASE("lifts, number operator and Xi*") {
  std::mt19937_64 rng(8);
  const int m = 4;
  const FockSpace space(m);
  const CMatrix v = random_matrix(rng, m), w = random_matrix(rng, m);
  CHECK((space.gamma_lift(v) * space.gamma_lift(w) - space.gamma_lift(v * w)).norm() < 1e-11);
  for (int s = 0; s < 3; ++s) CHECK((space.gamma_lift(shift_matrix(m, s)) - shift_lift(space, s)).norm() < 1e-15);

  const CMatrix a = random_matrix(rng, m);
  CMatrix expect = CMatrix::Zero(space.dim(), space.dim());
  for (int l = 0; l < m; ++l)
    for (int k = 0; k < m; ++k) expect += a(l, k) * space.creator(l) * space.annihilator(k);
  CHECK((space.derivation_lift(a) - expect).norm() < 1e-12);
  for (BasisIndex j = 0; j < 16; ++j) CHECK(space.number_operator()(j, j) == cplx(std::popcount(j)));

  const CMatrix x = random_matrix(rng, 16);
  const CMatrix rho = x * x.adjoint();
  CMatrix xi = CMatrix::Zero(16, 16);
  for (int k = 0; k < m; ++k) xi += space.annihilator(k) * rho * space.creator(k);
  CHECK((space.xi_star(rho) - xi).norm() < 1e-12);
  CHECK(std::abs(space.xi_star(rho).trace() - (space.number_operator() * rho).trace()) < 1e-11);
}
