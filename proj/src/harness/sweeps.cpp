#include <algorithm>
#include <cmath>
#include <numeric>

#include "carlab/harness/suites.hpp"
#include "carlab/measure.hpp"
#include "carlab/shift.hpp"
#include "suite_support.hpp"

namespace carlab::harness {

using detail::smooth_theorem1_cases;

namespace {

GridSpec sweep_grid(const ExperimentConfig& cfg, int k) {
  const int points = cfg.sweep_points << k;
  return GridSpec(points, cfg.sweep_extent / points);
}

// One- and two-particle bump states with f(0) != 0.
std::vector<RankOneState> smooth_states(const GridSpec& spec) {
  std::vector<RankOneState> out;
  for (const auto& c : smooth_theorem1_cases(spec)) out.push_back(c.state);
  return out;
}

}  // namespace

ConvergenceTable theorem1_h_table(const ExperimentConfig& cfg, int levels, DifferenceScheme scheme) {
  std::vector<double> params, errors;
  for (int k = 0; k <= levels; ++k) {
    const GridSpec spec = sweep_grid(cfg, k);
    double err = 0.;
    for (const auto& c : smooth_theorem1_cases(spec)) {
      Theorem1Options opt;
      opt.scheme = scheme;
      const IdentityResidual r = theorem1_residual(spec, c.state, c.x, opt);
      err = std::max(err, scheme == DifferenceScheme::adjoint_pair ? r.relative() : std::abs(r.residual));
    }
    params.push_back(spec.spacing);
    errors.push_back(err);
  }
  const bool exact = scheme == DifferenceScheme::adjoint_pair;
  auto t = make_table(exact ? "theorem1_h_adjoint_pair" : "theorem1_h_same_side", "h", params, errors);
  t.verdict = exact ? "exact" : "ratio";
  return t;
}

ConvergenceTable theorem2_h_table(const ExperimentConfig& cfg, int levels) {
  std::vector<double> params, errors;
  for (int k = 0; k <= levels; ++k) {
    const GridSpec spec = sweep_grid(cfg, k);
    const int t = static_cast<int>(std::lround(0.125 * spec.points));  // t = extent / 8
    double err = 0.;
    for (const auto& c : smooth_theorem1_cases(spec)) {
      MonomialObservable x = c.x;
      const int end = spec.points - spec.trailing_cells();
      for (auto* list : {&x.hs, &x.es})
        for (auto& f : *list)
          for (int i = end - t; i < end; ++i) f.values()[i] = 0.0;
      err = std::max(err, integral_equation_residual(spec, {t}, c.state, x).relative());
    }
    params.push_back(spec.spacing);
    errors.push_back(err);
  }
  auto t = make_table("theorem2_h", "h", params, errors);
  t.verdict = "exact";
  return t;
}

ConvergenceTable kraus_n_table(const ExperimentConfig& cfg, int levels) {
  const GridSpec spec = sweep_grid(cfg, levels);
  int l = 1;
  for (int n : cfg.kraus_n) l = std::lcm(l, n);
  const int width = 2 * l;
  if (width > spec.points - spec.trailing_cells())
    throw ConfigError("kraus_n: bin of " + std::to_string(width) + " cells does not fit the sweep grid");
  const TimeBin bin{0, width};
  std::vector<double> params, errors;
  for (int n : cfg.kraus_n) {
    double err = 0.;
    for (const auto& st : smooth_states(spec)) {
      const WedgeOperator rho(st);
      const WedgeOperator q = measure_star_quadrature(spec, bin, rho);
      const WedgeOperator k = kraus_riemann_sum(spec, bin, n).apply(rho);
      err = std::max(err, trace_norm(k - q));
    }
    params.push_back(n);
    errors.push_back(err);
  }
  return make_table("kraus_n", "n", params, errors);
}

ConvergenceTable mera_t_table(const ExperimentConfig& cfg, int levels) {
  std::vector<double> params, errors;
  for (int k = 0; k <= levels; ++k) {
    const GridSpec spec = sweep_grid(cfg, k);
    double err = 0.;
    for (const auto& st : smooth_states(spec)) err = std::max(err, small_time_link(spec, st, {2}));
    params.push_back(2 * spec.spacing);
    errors.push_back(err);
  }
  return make_table("mera_t", "t", params, errors);
}

ConvergenceTable picard_n_table(const FockSpace& space, const PicardState& picard, const PicardTestSet& tests,
                                int levels) {
  std::vector<double> params, errors;
  const int top = std::min<int>(levels, static_cast<int>(picard.iterates.size()) - 1);
  for (int n = 0; n <= top; ++n) {
    params.push_back(n);
    errors.push_back(picard_reference_gap(space, picard, n, tests));
  }
  auto t = make_table("picard_n", "n", params, errors);
  bool monotone = errors.back() <= kExactFloor;
  for (std::size_t i = 1; i < errors.size(); ++i) monotone = monotone && errors[i] <= errors[i - 1] + kExactFloor;
  t.verdict = monotone ? "monotone" : "not_monotone";
  return t;
}

PicardTestSet picard_test_set(const GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  PicardTestSet set;
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 3; ++i) {
      RankOneState st;
      for (int j = 0; j < n; ++j) {
        st.fs.push_back(random_function(spec, rng, Domain::d));
        st.gs.push_back(random_function(spec, rng, Domain::d));
      }
      set.states.push_back(std::move(st));
    }
  const int usable = spec.points - spec.trailing_cells();
  set.monomials.push_back(MonomialObservable{});
  for (int support = 1; support <= usable; ++support)
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 0}, std::pair{0, 2}, std::pair{2, 2}}) {
      if (support < 2 && (p == 2 || q == 2)) continue;
      MonomialObservable x;
      for (int i = 0; i < p + q; ++i) {
        GridFunction f = random_function(spec, rng, Domain::d);
        for (int c = support; c < usable; ++c) f.values()[c] = 0.0;
        (i < p ? x.hs : x.es).push_back(std::move(f));
      }
      set.monomials.push_back(std::move(x));
    }
  return set;
}

SuiteReport sweep_convergence(const std::string& target, int levels, const ExperimentConfig& cfg) {
  if (levels < 3) throw ConfigError("sweep needs at least 3 levels");
  const auto& targets = sweep_targets();
  if (std::find(targets.begin(), targets.end(), target) == targets.end())
    throw ConfigError("unknown sweep target '" + target + "'");
  SuiteReport rep;
  rep.suite = "sweep_" + target;
  rep.preset = cfg.preset;
  rep.seed = cfg.seed;

  auto ratio_check = [&](ConvergenceTable t, const std::string& anchor) {
    rep.at_least(t.name + "_min_ratio", t.min_ratio(), kRatioThreshold, anchor, "error ratio under refinement");
    rep.tables.push_back(std::move(t));
  };
  auto exact_check = [&](ConvergenceTable t, const std::string& anchor) {
    rep.at_most(t.name + "_max_error", t.max_error(), kExactFloor, anchor, "exact on every grid");
    rep.tables.push_back(std::move(t));
  };

  if (target == "theorem1_h") {
    exact_check(theorem1_h_table(cfg, levels, DifferenceScheme::adjoint_pair), "trace identity for L + Delta");
    ratio_check(theorem1_h_table(cfg, levels, DifferenceScheme::same_side), "trace identity for L + Delta");
  } else if (target == "theorem2_h") {
    exact_check(theorem2_h_table(cfg, levels), "integral equation for the flow of shifts");
  } else if (target == "kraus_n") {
    ratio_check(kraus_n_table(cfg, levels), "Riemann sum of Kraus maps");
  } else if (target == "mera_t") {
    ratio_check(mera_t_table(cfg, levels), "small-time limit of M_*");
  } else {
    const GridSpec spec(cfg.choi_modes, cfg.spacing);
    const FockSpace space(cfg.choi_modes);
    const PicardState st = picard_iterate(space, unit_quadrature_bins(spec, cfg.horizon), cfg.horizon,
                                          {PicardVariant::convolution, std::max(levels, 2)});
    auto t = picard_n_table(space, st, picard_test_set(spec, cfg.seed), levels);
    rep.at_least("picard_n_monotone", t.verdict == "monotone" ? 1.0 : 0.0, 1.0, "Picard iteration",
                 "gap to the flow of shifts is non-increasing and reaches the floor");
    rep.tables.push_back(std::move(t));
  }
  return rep;
}

}  // namespace carlab::harness
