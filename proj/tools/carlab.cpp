#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "carlab/harness/config.hpp"
#include "carlab/harness/report.hpp"
#include "carlab/harness/suites.hpp"
#include "carlab/kernels.hpp"

namespace h = carlab::harness;

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "key = value config file");
  cmd->add_option("--seed", o.seed, "override the RNG seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
}

h::ExperimentConfig make_config(const CommonOptions& o) {
  h::ExperimentConfig cfg = o.config_path.empty() ? h::ExperimentConfig{} : h::load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out_dir = *o.out;
  if (o.format) cfg.format = *o.format;
  cfg.validate();
  return cfg;
}

int finish(const h::SuiteReport& rep, const h::ExperimentConfig& cfg, const std::string& stem, double seconds) {
  h::emit_report(rep, cfg.format, cfg.out_dir, stem);
  std::cout << h::render_text(rep);
  const std::string isa(carlab::kernels::isa_name(carlab::kernels::active_isa()));
  std::fprintf(stderr, "%s: %.2f s (%s kernels)\n", stem.c_str(), seconds, isa.c_str());
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"carlab: numerical checks for perturbed semigroups on the CAR algebra"};
  app.require_subcommand(1);

  CommonOptions run_opts, sweep_opts;
  std::string suite;
  std::string target;
  int levels = 3;
  bool levels_given = false;

  auto* run = app.add_subcommand("run", "run a verification suite");
  run->add_option("--suite", suite, "car_algebra, theorem1, measure, picard, theorem2, no_event or all")->required();
  add_common(run, run_opts);

  auto* sweep = app.add_subcommand("sweep", "run a convergence sweep");
  sweep->add_option("--target", target, "theorem1_h, theorem2_h, kraus_n, mera_t or picard_n")->required();
  sweep->add_option_function<int>("--levels", [&](const int& v) {
    levels = v;
    levels_given = true;
  }, "number of refinements (>= 3)");
  add_common(sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    if (*run) {
      const auto cfg = make_config(run_opts);
      const auto rep = h::run_suite(suite, cfg);
      return finish(rep, cfg, suite, elapsed());
    }
    const auto cfg = make_config(sweep_opts);
    const auto rep = h::sweep_convergence(target, levels_given ? levels : cfg.levels, cfg);
    return finish(rep, cfg, "sweep_" + target, elapsed());
  } catch (const h::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const h::ReportIoError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
