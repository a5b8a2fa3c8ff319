#include <doctest.h>

#include "carlab/wedge.hpp"

using namespace carlab;

namespace {

FunctionList random_list(const GridSpec& spec, std::mt19937_64& rng, int n) {
  FunctionList out;
  for (int i = 0; i < n; ++i) out.push_back(random_function(spec, rng, Domain::d));
  return out;
}

}  // namespace

TEST_CASE("symbolic pairings agree with dense Fock matrices") {
  std::mt19937_64 rng(10);
  const GridSpec spec(8, 0.3);
  const FockSpace space(8);
  for (int n = 0; n <= 2; ++n)
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; q <= 2; ++q) {
        const int m = n + q - p;
        if (m < 0) continue;
        const RankOneState st{random_list(spec, rng, n), random_list(spec, rng, m)};
        const MonomialObservable x{random_list(spec, rng, p), random_list(spec, rng, q)};
        const WedgeOperator rho(st);
        const FockOperator dense_rho = space.wedge(st.fs) * space.wedge(st.gs).adjoint();
        CHECK((to_dense(space, rho) - dense_rho).norm() < 1e-13);
        const cplx dense = (dense_rho * monomial_operator(space, x)).trace();
        CHECK(std::abs(pairing(rho, x) - dense) < 1e-13);
        CHECK(std::abs(pairing_dense(space, rho, x) - dense) < 1e-13);
      }
}

TEST_CASE("monomials are ordered products of ladders") {
  std::mt19937_64 rng(11);
  const GridSpec spec(5, 0.4);
  const FockSpace space(5);
  const FunctionList hs = random_list(spec, rng, 2), es = random_list(spec, rng, 2);
  const MonomialObservable x{hs, es};
  // a(h_1) a(h_2) a^+(e_1) a^+(e_2)
  const CMatrix expect = space.ladder(hs[0], LadderKind::annihilate) * space.ladder(hs[1], LadderKind::annihilate) *
                         space.ladder(es[0], LadderKind::create) * space.ladder(es[1], LadderKind::create);
  CHECK((monomial_operator(space, x) - expect).norm() < 1e-13);
  const FockVector v = space.wedge(random_list(spec, rng, 1));
  CHECK((apply_monomial(space, x, v) - expect * v).norm() < 1e-13);
}

TEST_CASE("trace, trace norm and simplification") {
  std::mt19937_64 rng(12);
  const GridSpec spec(6, 0.5);
  const FockSpace space(6);
  const RankOneState a{random_list(spec, rng, 2), random_list(spec, rng, 2)};
  const RankOneState b{random_list(spec, rng, 1), random_list(spec, rng, 1)};
  const WedgeOperator op = WedgeOperator(a) + cplx(0.5, 0.2) * WedgeOperator(b);
  const CMatrix dense = to_dense(space, op);
  CHECK(std::abs(trace(op) - dense.trace()) < 1e-13);
  CHECK(std::abs(trace_norm(op) - linalg::trace_norm(dense)) < 1e-12);
  CHECK(trace_norm(WedgeOperator(a) - WedgeOperator(a)) < 1e-14);
  CHECK(WedgeOperator(a).adjoint().terms().front().kets.size() == 2);
  CHECK((to_dense(space, op.adjoint()) - dense.adjoint()).norm() < 1e-13);
  WedgeOperator twice = WedgeOperator(a) + WedgeOperator(a);
  CHECK(twice.simplified().size() == 1);
  CHECK(std::abs(gram_determinant(a.fs, a.gs) - wedge_overlap(a.fs, a.gs)) < 1e-14);
}

TEST_CASE("contraction expands a(u) on a wedge") {
  std::mt19937_64 rng(13);
  const GridSpec spec(6, 0.5);
  const FockSpace space(6);
  const FunctionList fs = random_list(spec, rng, 3);
  const GridFunction u = random_function(spec, rng, Domain::d);
  FockVector sum = FockVector::Zero(space.dim());
  for (const auto& c : contract(u, fs)) sum += c.coeff * space.wedge(c.rest);
  CHECK((sum - space.apply_ladder(u, LadderKind::annihilate, space.wedge(fs))).norm() < 1e-13);
  CHECK(without(fs, 1).size() == 2);
  CHECK(mapped(fs, CMatrix::Identity(6, 6)).front().values() == fs.front().values());
}
