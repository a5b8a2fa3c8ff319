#include "carlab/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace carlab::harness {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportIoError("cannot write " + path.string());
  out << body;
  if (!out) throw ReportIoError("cannot write " + path.string());
}

}  // namespace

double ConvergenceTable::min_ratio() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : rows)
    if (r.ratio) m = std::min(m, *r.ratio);
  return m;
}

double ConvergenceTable::max_error() const {
  double m = 0.;
  for (const auto& r : rows) m = std::max(m, r.error);
  return m;
}

ConvergenceTable make_table(std::string name, std::string parameter, const std::vector<double>& params,
                            const std::vector<double>& errors) {
  ConvergenceTable t{std::move(name), std::move(parameter), {}, "ratio"};
  for (std::size_t i = 0; i < params.size(); ++i) {
    ConvergenceRow row{params[i], errors[i], std::nullopt};
    if (i > 0 && errors[i] > 0.0 && errors[i - 1] > 0.0) row.ratio = errors[i - 1] / errors[i];
    t.rows.push_back(row);
  }
  return t;
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::info: return "info";
  }
  return "?";
}

bool SuiteReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

const CheckRecord* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void SuiteReport::at_most(const std::string& name, double value, double tol, const std::string& anchor,
                          const std::string& note) {
  const bool ok = std::isfinite(value) && value <= tol;
  checks.push_back({suite, name, ok ? CheckStatus::pass : CheckStatus::fail, value, tol, "<=", anchor, note});
}

void SuiteReport::at_least(const std::string& name, double value, double tol, const std::string& anchor,
                           const std::string& note) {
  const bool ok = !std::isnan(value) && value >= tol;
  checks.push_back({suite, name, ok ? CheckStatus::pass : CheckStatus::fail, value, tol, ">=", anchor, note});
}

void SuiteReport::info(const std::string& name, double value, const std::string& anchor, const std::string& note) {
  checks.push_back({suite, name, CheckStatus::info, value, 0.0, "info", anchor, note});
}

void SuiteReport::merge(const SuiteReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  for (auto t : other.tables) {
    t.name = other.suite + "/" + t.name;
    tables.push_back(std::move(t));
  }
  wall_seconds += other.wall_seconds;
}

nlohmann::ordered_json to_json(const SuiteReport& report) {
  using nlohmann::ordered_json;
  // Infinite values (e.g. an exact table's ratio) are not valid JSON numbers.
  auto num = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = report.suite;
  j["preset"] = report.preset;
  j["seed"] = report.seed;
  j["status"] = report.passed() ? "pass" : "fail";
  j["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"suite", c.suite},
                           {"name", c.name},
                           {"status", status_name(c.status)},
                           {"value", num(c.value)},
                           {"tolerance", num(c.tolerance)},
                           {"comparison", c.comparison},
                           {"anchor", c.anchor},
                           {"note", c.note}});
  }
  j["tables"] = ordered_json::array();
  for (const auto& t : report.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows)
      rows.push_back({{"parameter", num(r.parameter)},
                      {"error", num(r.error)},
                      {"ratio", r.ratio ? num(*r.ratio) : ordered_json(nullptr)}});
    j["tables"].push_back({{"name", t.name}, {"parameter", t.parameter}, {"verdict", t.verdict}, {"rows", rows}});
  }
  return j;
}

std::string render_json(const SuiteReport& report) { return to_json(report).dump(2) + "\n"; }

std::string render_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "suite,check,value,tol,status,anchor\n";
  for (const auto& c : report.checks)
    out << csv_field(c.suite) << ',' << csv_field(c.name) << ',' << format_double(c.value) << ','
        << format_double(c.tolerance) << ',' << status_name(c.status) << ',' << csv_field(c.anchor) << '\n';
  return out.str();
}

std::string render_tables_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "table,parameter,error,ratio\n";
  for (const auto& t : report.tables)
    for (const auto& r : t.rows)
      out << csv_field(t.name) << ',' << format_double(r.parameter) << ',' << format_double(r.error) << ','
          << (r.ratio ? format_double(*r.ratio) : std::string{}) << '\n';
  return out.str();
}

std::string render_text(const SuiteReport& report) {
  std::ostringstream out;
  out << "suite " << report.suite << " (preset " << report.preset << ", seed " << report.seed
      << "): " << (report.passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& c : report.checks) {
    out << "  [" << status_name(c.status) << "] " << c.suite << '/' << c.name << "  " << format_double(c.value);
    if (c.status != CheckStatus::info) out << ' ' << c.comparison << ' ' << format_double(c.tolerance);
    out << "  (" << c.anchor << ')';
    if (!c.note.empty()) out << "  " << c.note;
    out << '\n';
  }
  for (const auto& t : report.tables) {
    out << "  table " << t.name << " [" << t.verdict << "]  " << t.parameter << " | error | ratio\n";
    for (const auto& r : t.rows)
      out << "    " << format_double(r.parameter) << " | " << format_double(r.error) << " | "
          << (r.ratio ? format_double(*r.ratio) : std::string("-")) << '\n';
  }
  return out.str();
}

std::vector<std::string> emit_report(const SuiteReport& report, const std::string& format,
                                     const std::string& out_dir, const std::string& stem) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ReportIoError("cannot create " + out_dir + ": " + ec.message());
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& body) {
    const fs::path p = fs::path(out_dir) / name;
    write_file(p, body);
    written.push_back(p.string());
  };
  if (format == "json") put(stem + ".json", render_json(report));
  else if (format == "csv") put(stem + ".csv", render_csv(report));
  else if (format == "text") put(stem + ".txt", render_text(report));
  else throw ReportIoError("unknown report format " + format);
  if (!report.tables.empty()) put(stem + "_table.csv", render_tables_csv(report));
  return written;
}

}  // namespace carlab::harness
