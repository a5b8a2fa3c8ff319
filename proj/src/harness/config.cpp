#include "carlab/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace carlab::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) throw ConfigError("config: bad value for '" + key + "': " + value);
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(key, trim(item)));
  if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
  return out;
}

}  // namespace

double ExperimentConfig::tol(const std::string& check, double fallback) const {
  const auto it = tolerances.find(check);
  return it == tolerances.end() ? fallback : it->second;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "preset") preset = value;
  else if (key == "modes") modes = parse_number<int>(key, value);
  else if (key == "spacing") spacing = parse_number<double>(key, value);
  else if (key == "choi_modes") choi_modes = parse_number<int>(key, value);
  else if (key == "horizon") horizon = parse_number<int>(key, value);
  else if (key == "levels") levels = parse_number<int>(key, value);
  else if (key == "sweep_points") sweep_points = parse_number<int>(key, value);
  else if (key == "sweep_extent") sweep_extent = parse_number<double>(key, value);
  else if (key == "kraus_n") kraus_n = parse_int_list(key, value);
  else if (key == "picard_steps") picard_steps = parse_number<int>(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "cases") cases = parse_number<int>(key, value);
  else if (key == "out_dir") out_dir = value;
  else if (key == "format") format = value;
  else if (key.rfind("tol.", 0) == 0 && key.size() > 4) tolerances[key.substr(4)] = parse_number<double>(key, value);
  else throw ConfigError("config: unknown key '" + key + "'");
}

void ExperimentConfig::validate() const {
  if (modes < 4 || modes > 12) throw ConfigError("config: modes must lie in [4, 12]");
  if (!(spacing > 0.0)) throw ConfigError("config: spacing must be positive");
  if (choi_modes < 2 || choi_modes > 4) throw ConfigError("config: choi_modes must lie in [2, 4]");
  if (horizon < 1 || horizon > choi_modes) throw ConfigError("config: horizon must lie in [1, choi_modes]");
  if (levels < 1) throw ConfigError("config: levels must be positive");
  if (sweep_points < 8 || sweep_points % 8 != 0) throw ConfigError("config: sweep_points must be a multiple of 8");
  if (!(sweep_extent > 0.0)) throw ConfigError("config: sweep_extent must be positive");
  for (int n : kraus_n)
    if (n <= 0) throw ConfigError("config: kraus_n entries must be positive");
  if (picard_steps < 1) throw ConfigError("config: picard_steps must be positive");
  if (cases < 1) throw ConfigError("config: cases must be positive");
  if (format != "json" && format != "csv" && format != "text") throw ConfigError("config: format must be json, csv or text");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace carlab::harness
