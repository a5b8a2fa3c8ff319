#pragma once

#include <random>
#include <vector>

#include "carlab/grid.hpp"
#include "carlab/harness/config.hpp"
#include "carlab/linalg.hpp"
#include "carlab/wedge.hpp"

namespace carlab::harness::detail {

inline std::mt19937_64 rng_for(const ExperimentConfig& cfg, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index d, double scale) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = gauss(rng);
      m(i, j) = scale * cplx(re, gauss(rng));
    }
  return m;
}

// Unit-trace positive matrix of full rank.
inline CMatrix random_density(std::mt19937_64& rng, Eigen::Index d) {
  const CMatrix a = random_matrix(rng, d, 1.0);
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// random_function that also vanishes on the `tail` cells before the trailing block.
inline GridFunction random_supported(const GridSpec& spec, std::mt19937_64& rng, Domain domain, int tail) {
  GridFunction f = random_function(spec, rng, domain);
  const int end = spec.points - spec.trailing_cells();
  for (int i = std::max(0, end - tail); i < end; ++i) f.values()[i] = 0.0;
  return f;
}

struct SmoothCase {
  RankOneState state;
  MonomialObservable x;
};

// Smooth bump data on [0, extent], positions scaled from extent 4. The states
// have f(0) != 0; the monomial functions lie in D(d_*).
inline std::vector<SmoothCase> smooth_theorem1_cases(const GridSpec& spec) {
  const double s = spec.points * spec.spacing / 4.0;
  auto bump = [&](TestFunctionKind kind, double c, double w, double k) {
    TestFunctionParams p;
    p.center = c * s;
    p.width = w * s;
    p.wavenumber = k / s;
    return make_test_function(spec, kind, p);
  };
  const auto D = TestFunctionKind::bump_D_d;
  const auto Ds = TestFunctionKind::bump_D_dstar;
  const GridFunction f1 = bump(D, 0.2, 1.0, 1.3);
  const GridFunction g1 = bump(D, 0.0, 1.2, -0.4);
  const GridFunction f2 = bump(D, 1.0, 0.9, 0.7);
  const GridFunction g2 = bump(D, 0.6, 1.1, 0.2);
  const GridFunction h1 = bump(Ds, 1.3, 1.1, 0.5);
  const GridFunction e1 = bump(Ds, 1.6, 1.2, -0.9);
  std::vector<SmoothCase> out;
  out.push_back({RankOneState{{f1}, {g1}}, MonomialObservable{{h1}, {e1}}});
  out.push_back({RankOneState{{f1, f2}, {g1, g2}}, MonomialObservable{{h1}, {e1}}});
  return out;
}

}  // namespace carlab::harness::detail
