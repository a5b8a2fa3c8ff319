#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "carlab/harness/config.hpp"
#include "carlab/harness/report.hpp"
#include "carlab/harness/suites.hpp"

using namespace carlab::harness;

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "# comment\n"
      "preset = quick\n"
      "modes = 6   # trailing comment\n"
      "spacing = 0.5\n"
      "kraus_n = 2, 4, 8\n"
      "tol.theorem1_exact = 1e-9\n");
  CHECK(cfg.preset == "quick");
  CHECK(cfg.modes == 6);
  CHECK(cfg.spacing == 0.5);
  CHECK(cfg.kraus_n == std::vector<int>{2, 4, 8});
  CHECK(cfg.tol("theorem1_exact", 1.0) == 1e-9);
  CHECK(cfg.tol("other", 0.25) == 0.25);
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("modes = eight\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("modes 8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("modes = 13\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("choi_modes = 5\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/carlab.cfg"), ConfigError);
}

TEST_CASE("report rendering") {
  SuiteReport rep;
  rep.suite = "demo";
  rep.at_most("small", 1e-14, 1e-12, "anchor a");
  rep.at_least("big", 3.0, 1.7, "anchor, with comma");
  rep.info("note", 0.5, "anchor c");
  CHECK(rep.passed());
  rep.at_most("broken", 1.0, 0.5, "anchor d");
  CHECK_FALSE(rep.passed());
  CHECK(rep.find("broken")->status == CheckStatus::fail);

  const std::string csv = render_csv(rep);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(rep.checks.size()));
  CHECK(csv.find("\"anchor, with comma\"") != std::string::npos);

  const auto j = nlohmann::json::parse(render_json(rep));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["checks"].size() == 4);
  CHECK(j["checks"][1]["anchor"] == "anchor, with comma");
  CHECK(nlohmann::json::parse(j.dump()) == j);

  SuiteReport empty;
  const auto je = nlohmann::json::parse(render_json(empty));
  CHECK(je["checks"].is_array());
  CHECK(je["checks"].empty());
}

TEST_CASE("tables and emission") {
  auto t = make_table("demo", "h", {0.1, 0.05, 0.025}, {0.4, 0.2, 0.0});
  CHECK(t.rows[1].ratio.value() == doctest::Approx(2.0));
  CHECK_FALSE(t.rows[2].ratio.has_value());
  CHECK(t.min_ratio() == doctest::Approx(2.0));
  SuiteReport rep;
  rep.suite = "demo";
  rep.tables.push_back(t);
  const auto dir = std::filesystem::temp_directory_path() / "carlab_emit_test";
  std::filesystem::remove_all(dir);
  const auto files = emit_report(rep, "csv", dir.string(), "demo");
  CHECK(files.size() == 2);
  std::ifstream in(dir / "demo_table.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().rfind("table,parameter,error,ratio\n", 0) == 0);
  CHECK_THROWS_AS(emit_report(rep, "json", "/proc/carlab_no_such_dir", "demo"), ReportIoError);
  CHECK_THROWS_AS(emit_report(rep, "yaml", dir.string(), "demo"), std::exception);
}

TEST_CASE("suite dispatch") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(run_suite("nope", cfg), ConfigError);
  CHECK_THROWS_AS(sweep_convergence("kraus_n", 2, cfg), ConfigError);
  CHECK_THROWS_AS(sweep_convergence("nope", 3, cfg), ConfigError);
  const auto rep = run_suite("no_event", cfg);
  CHECK(rep.passed());
  CHECK(render_json(rep) == render_json(run_suite("no_event", cfg)));
}
