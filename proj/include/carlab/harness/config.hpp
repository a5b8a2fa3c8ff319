#pragma once

// Experiment configuration: flat `key = value` text, `#` comments.
//
//   preset        name recorded in reports (default "default")
//   modes         Fock modes / grid points M for identity suites (<= 12)
//   spacing       grid spacing h
//   choi_modes    modes for Choi-based suites (<= 4)
//   horizon       Picard horizon T in cells (<= choi_modes)
//   levels        h-halving levels for sweeps (>= 3)
//   sweep_points  coarsest grid of the convergence sweeps
//   sweep_extent  physical interval [0, X] of the convergence sweeps
//   kraus_n       comma-separated Riemann-sum block counts
//   picard_steps  Picard iterations
//   seed          RNG seed for every random test input
//   cases         random cases for the residual suites
//   tol.<check>   tolerance override for a named check
//   out_dir       report directory
//   format        json | csv | text

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace carlab::harness {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string preset = "default";
  int modes = 8;
  double spacing = 0.25;
  int choi_modes = 4;
  int horizon = 4;
  int levels = 3;
  int sweep_points = 32;
  double sweep_extent = 4.0;
  std::vector<int> kraus_n{4, 8, 16, 32};
  int picard_steps = 20;
  std::uint64_t seed = 20240611;
  int cases = 200;
  std::map<std::string, double> tolerances;
  std::string out_dir = ".";
  std::string format = "json";

  double tol(const std::string& check, double fallback) const;
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace carlab::harness
