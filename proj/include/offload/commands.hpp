// Command implementations behind the CLI: solve, dynamics, sweep, certify.
// Each returns the process exit code (0 ok, 2 schema error, 3 non-convergence)
// and writes its artifacts into out_dir.
#pragma once

#include <string>

#include "offload/scenario_io.hpp"

namespace offload {

int cmd_solve(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_dynamics(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_sweep(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_certify(const ExperimentConfig& cfg, const std::string& out_dir);

// Sweep CSV text for a spec (preset or custom axis); exposed for tests.
// Throws std::runtime_error when a swept point fails to converge.
std::string sweep_csv(const ExperimentConfig& cfg);

}  // namespace offload
