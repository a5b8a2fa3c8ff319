// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned here
// and do not read the report's own tolerance column.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "carlab/harness/config.hpp"
#include "carlab/harness/report.hpp"
#include "carlab/harness/suites.hpp"

using namespace carlab::harness;

namespace {

struct Timed {
  SuiteReport report;
  double seconds = 0.;
};

Timed timed(const std::function<SuiteReport()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  Timed t{fn(), 0.};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

struct Criterion {
  int id;
  std::string title;
  bool ok = true;
  std::string detail;

  void require(const SuiteReport& rep, const std::string& check, const char* cmp, double tol) {
    const CheckRecord* c = rep.find(check);
    if (!c) {
      ok = false;
      detail += " " + check + "=missing";
      return;
    }
    const bool pass = std::string(cmp) == "<=" ? c->value <= tol : c->value >= tol;
    ok = ok && pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, " %s=%.3e%s%.3g", check.c_str(), c->value, cmp, tol);
    detail += buf;
  }
  void require_value(const std::string& what, double value, const char* cmp, double tol) {
    const bool pass = std::string(cmp) == "<=" ? value <= tol : value >= tol;
    ok = ok && pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, " %s=%.3g%s%.3g", what.c_str(), value, cmp, tol);
    detail += buf;
  }
};

}  // namespace

int main() {
  ExperimentConfig cfg;  // default preset: M = 8, Choi modes 4, horizon 4, 20 Picard steps, 200 cases
  cfg.validate();

  std::map<std::string, Timed> suites;
  for (const auto& s : suite_names())
    if (s != "all") suites[s] = timed([&] { return run_suite(s, cfg); });
  std::map<std::string, Timed> sweeps;
  for (const auto& t : sweep_targets()) sweeps[t] = timed([&] { return sweep_convergence(t, 3, cfg); });

  std::vector<Criterion> out;

  {
    Criterion c{1, "CAR suite (M=8)"};
    const auto& r = suites["car_algebra"].report;
    for (const char* n : {"car_a_a", "car_adag_adag", "car_a_adag", "ladder_adjointness", "ladder_square_zero",
                          "function_car", "function_anticommute", "ladder_norm"})
      c.require(r, n, "<=", 1e-10);
    c.require_value("runtime_s", suites["car_algebra"].seconds, "<=", 30.0);
    out.push_back(c);
  }
  {
    Criterion c{2, "Determinant identity (100 cases, n<=4)"};
    c.require(suites["car_algebra"].report, "determinant_identity", "<=", 1e-12);
    out.push_back(c);
  }
  {
    Criterion c{3, "Xi* trace identity, projectors, Kraus form and CP"};
    const auto& r = suites["car_algebra"].report;
    c.require(r, "xi_star_trace_identity", "<=", 1e-12);
    c.require(r, "xi_star_projectors", "<=", 1e-12);
    c.require(r, "xi_star_kraus_form", "<=", 1e-12);
    c.require(r, "xi_star_choi", ">=", -1e-12);
    out.push_back(c);
  }
  {
    Criterion c{4, "Trace identity for L + Delta, exact form (200 cases)"};
    const auto& r = suites["theorem1"].report;
    c.require_value("cases", cfg.cases, ">=", 200);
    c.require(r, "theorem1_exact", "<=", 1e-10);
    c.require(r, "theorem1_negative_h0", ">=", 100.0);
    out.push_back(c);
  }
  {
    Criterion c{5, "Trace identity, same-side differences converge"};
    c.require(sweeps["theorem1_h"].report, "theorem1_h_same_side_min_ratio", ">=", 1.7);
    out.push_back(c);
  }
  {
    Criterion c{6, "Q_n bound, Kraus sum convergence, trace non-increase"};
    const auto& r = suites["measure"].report;
    c.require(r, "qn_bound", "<=", 1e-12);
    c.require(sweeps["kraus_n"].report, "kraus_n_min_ratio", ">=", 1.7);
    c.require(r, "measure_trace_nonincreasing", "<=", 1e-12);
    out.push_back(c);
  }
  {
    Criterion c{7, "Covariance and sigma-additivity"};
    const auto& r = suites["measure"].report;
    c.require(r, "covariance", "<=", 1e-12);
    c.require(r, "covariance_heisenberg", "<=", 1e-12);
    c.require(r, "sigma_additivity", "<=", 1e-13);
    out.push_back(c);
  }
  {
    Criterion c{8, "Small-time link, (1/t) M_*([0,t)) -> Delta"};
    c.require(sweeps["mera_t"].report, "mera_t_min_ratio", ">=", 1.7);
    out.push_back(c);
  }
  {
    Criterion c{9, "Integral equation for the flow of shifts"};
    // The discrete equation is exact, so every level sits at the floor ("exact" sentinel).
    c.require(sweeps["theorem2_h"].report, "theorem2_h_max_error", "<=", kExactFloor);
    c.require(suites["theorem2"].report, "theorem2_residual", "<=", 1e-10);
    c.require(suites["picard"].report, "picard_limit_matches_flow", "<=", 1e-10);
    out.push_back(c);
  }
  {
    Criterion c{10, "Picard monotonicity and unit bound (M=4, 20 steps)"};
    const auto& r = suites["picard"].report;
    c.require_value("steps", cfg.picard_steps, ">=", 20);
    for (const char* v : {"convolution", "lower_endpoint"}) {
      c.require(r, std::string("picard_monotone_") + v, ">=", -1e-10);
      c.require(r, std::string("picard_unit_bound_") + v, ">=", -1e-10);
    }
    c.require_value("runtime_s", suites["picard"].seconds, "<=", 300.0);
    out.push_back(c);
  }
  {
    Criterion c{11, "Excessive map Theta and the measure it generates (d<=4)"};
    const auto& r = suites["no_event"].report;
    c.require(r, "theta_methods_agree", "<=", 1e-8);
    c.require(r, "theta_excessive", ">=", -1e-10);
    c.require(r, "measure_theta_vs_quadrature", "<=", 1e-8);
    c.require(r, "qubit_theta_identity", "<=", 1e-10);
    out.push_back(c);
  }
  {
    Criterion c{12, "Determinism: reruns give identical reports"};
    int mismatches = 0;
    for (const auto& [name, t] : suites) {
      const SuiteReport again = run_suite(name, cfg);
      mismatches += render_json(t.report) != render_json(again) || render_csv(t.report) != render_csv(again);
    }
    for (const auto& [name, t] : sweeps)
      mismatches += render_json(t.report) != render_json(sweep_convergence(name, 3, cfg));
    c.require_value("mismatched_reports", mismatches, "<=", 0);
    out.push_back(c);
  }

  bool all = true;
  for (const auto& c : out) {
    std::printf("%s %2d %s |%s\n", c.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), c.detail.c_str());
    all = all && c.ok;
  }
  for (const auto& [name, t] : suites) std::printf("time %-12s %.2f s\n", name.c_str(), t.seconds);
  for (const auto& [name, t] : sweeps) std::printf("time sweep_%-10s %.2f s\n", name.c_str(), t.seconds);
  return all ? 0 : 1;
}
