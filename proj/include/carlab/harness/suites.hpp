#pragma once

#include <string>
#include <vector>

#include "carlab/harness/config.hpp"
#include "carlab/harness/report.hpp"
#include "carlab/perturbation.hpp"

namespace carlab::harness {

const std::vector<std::string>& suite_names();
const std::vector<std::string>& sweep_targets();

// Throws ConfigError for unknown names.
SuiteReport run_suite(const std::string& name, const ExperimentConfig& cfg);
// levels < 3 -> ConfigError
SuiteReport sweep_convergence(const std::string& target, int levels, const ExperimentConfig& cfg);

SuiteReport car_algebra_suite(const ExperimentConfig& cfg);
SuiteReport theorem1_suite(const ExperimentConfig& cfg);
SuiteReport measure_suite(const ExperimentConfig& cfg);
SuiteReport picard_suite(const ExperimentConfig& cfg);
SuiteReport theorem2_suite(const ExperimentConfig& cfg);
SuiteReport no_event_suite(const ExperimentConfig& cfg);

// Convergence tables on grids sweep_points * 2^k, k = 0..levels, over [0, sweep_extent].
ConvergenceTable theorem1_h_table(const ExperimentConfig& cfg, int levels, DifferenceScheme scheme);
ConvergenceTable theorem2_h_table(const ExperimentConfig& cfg, int levels);
ConvergenceTable kraus_n_table(const ExperimentConfig& cfg, int levels);
ConvergenceTable mera_t_table(const ExperimentConfig& cfg, int levels);
ConvergenceTable picard_n_table(const FockSpace& space, const PicardState& picard, const PicardTestSet& tests,
                                int levels);

// Test set used by the Picard suite and sweep on the Choi-sized grid.
PicardTestSet picard_test_set(const GridSpec& spec, std::uint64_t seed);

// Floors used to classify sweep tables.
inline constexpr double kExactFloor = 1e-12;
inline constexpr double kRatioThreshold = 1.7;

}  // namespace carlab::harness
