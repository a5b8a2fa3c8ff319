#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace carlab::harness {

inline constexpr int kSchemaVersion = 1;

enum class CheckStatus { pass, fail, info };

struct CheckRecord {
  std::string suite;
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double value = 0.;
  double tolerance = 0.;
  std::string comparison;  // "<=", ">=", "info"
  std::string anchor;
  std::string note;
};

struct ConvergenceRow {
  double parameter = 0.;
  double error = 0.;
  std::optional<double> ratio;  // previous error / this error
};

struct ConvergenceTable {
  std::string name;
  std::string parameter;  // what the parameter column holds
  std::vector<ConvergenceRow> rows;
  std::string verdict;    // "ratio", "exact" or "monotone"

  double min_ratio() const;
  double max_error() const;
};

// Successive ratios error[i-1]/error[i]; absent when either error is zero.
ConvergenceTable make_table(std::string name, std::string parameter, const std::vector<double>& params,
                            const std::vector<double>& errors);

struct SuiteReport {
  std::string suite;
  std::string preset;
  unsigned long long seed = 0;
  std::vector<CheckRecord> checks;
  std::vector<ConvergenceTable> tables;
  double wall_seconds = 0.;  // never serialized

  bool passed() const;
  const CheckRecord* find(const std::string& name) const;

  void at_most(const std::string& name, double value, double tol, const std::string& anchor,
               const std::string& note = {});
  void at_least(const std::string& name, double value, double tol, const std::string& anchor,
                const std::string& note = {});
  void info(const std::string& name, double value, const std::string& anchor, const std::string& note = {});
  void merge(const SuiteReport& other);
};

const char* status_name(CheckStatus s);

nlohmann::ordered_json to_json(const SuiteReport& report);
std::string render_json(const SuiteReport& report);
std::string render_csv(const SuiteReport& report);
std::string render_tables_csv(const SuiteReport& report);
std::string render_text(const SuiteReport& report);

struct ReportIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes <out_dir>/<stem>.<ext> for the chosen format (sweeps also get a
// plot-ready <stem>_table.csv). Returns the paths written.
std::vector<std::string> emit_report(const SuiteReport& report, const std::string& format,
                                     const std::string& out_dir, const std::string& stem);

}  // namespace carlab::harness
