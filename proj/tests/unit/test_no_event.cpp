#include <doctest.h>

#include <limits>

#include "carlab/no_event.hpp"
#include "carlab/superop.hpp"

using namespace carlab;

TEST_CASE("qubit decay closed forms") {
  const OpenSystem q = qubit_decay(2.0);
  CMatrix one = CMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  // Tr Psi_t(|1><1|) = e^{-gamma t}
  CHECK(std::abs(no_event_evolve(0.5, q.k, one).trace().real() - std::exp(-1.0)) < 1e-14);
  CHECK(std::abs(admissibility_margin(q.k, q.ls)) < 1e-14);
  const CMatrix theta = theta_excessive(q.k, q.ls, CMatrix::Identity(2, 2), ThetaMethod::quadrature);
  CHECK((theta - one).norm() < 1e-10);
  CHECK_THROWS_AS(theta_excessive(q.k, q.ls, CMatrix::Identity(2, 2), ThetaMethod::lyapunov), std::domain_error);
}

TEST_CASE("random open system: Theta and the measure") {
  const OpenSystem s = random_open_system(3, 2, 0.3, 5);
  CHECK(dissipativity_margin(s.k) <= 0.0);
  CHECK(admissibility_margin(s.k, s.ls) < 0.0);
  const auto lyap = theta_superop(s.k, s.ls, ThetaMethod::lyapunov);
  const auto quad = theta_superop(s.k, s.ls, ThetaMethod::quadrature);
  CHECK((lyap - quad).cwiseAbs().maxCoeff() < 1e-9);
  // generator equation K^+ Theta(x) + Theta(x) K = -sum L^+ x L
  const CMatrix x = CMatrix::Random(3, 3);
  const CMatrix th = theta_excessive(s.k, s.ls, x, ThetaMethod::lyapunov);
  CHECK((s.k.adjoint() * th + th * s.k + delta_heisenberg(s.ls, x)).norm() < 1e-12);
  const auto m = measure_from_theta(s.k, s.ls, 0.2, 0.9, ThetaMethod::lyapunov);
  CHECK((m - measure_eq1_quadrature(s.k, s.ls, 0.2, 0.9)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(choi_min_eigenvalue(m) > -1e-10);
}

TEST_CASE("matrix quadrature") {
  const auto f = [](double t) { return CMatrix::Constant(1, 1, cplx(std::exp(-t))); };
  CHECK(std::abs(integrate_matrix(f, 0.0, 3.0, 0.5)(0, 0) - (1.0 - std::exp(-3.0))) < 1e-14);
  CHECK(std::abs(integrate_matrix(f, 0.0, std::numeric_limits<double>::infinity(), 0.5)(0, 0) - 1.0) < 1e-12);
}
