// JSON config ingestion (strict, versioned schema), machine-readable solve
// reports, and deterministic CSV emission.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "offload/bounded.hpp"
#include "offload/model.hpp"
#include "offload/oracle.hpp"

namespace offload {

// Schema violations map to CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  enum class Kind { Cost, Weight, Exponent, NumAps, NumFlows };
  Kind kind = Kind::Cost;
  int flow = 0;  // 0-based; for Cost/Weight/Exponent
  int ap = -1;   // 0-based AP for Cost, -1 = all APs
  std::vector<double> values;
};

struct SweepSpec {
  std::string preset;             // one of fig1a..fig8, or empty
  std::optional<SweepAxis> axis;  // custom sweep when preset is empty
};

struct RandomSpec {
  int count = 10;
  int max_flows = 3;
  int max_aps = 4;
  bool bounded = false;
  unsigned long long seed = 1;
};

struct ExperimentConfig {
  std::optional<ScenarioSpec> scenario;
  DynamicsOptions solver;
  PriceVector initial_prices;  // empty = default 0.01 per flow
  std::optional<CertifyOptions> certify;
  std::optional<SweepSpec> sweep;
  std::optional<RandomSpec> random;
};

// Parses and validates a config document. Unknown keys are rejected at every
// level; a "preset" key expands to the named figure configuration first and
// sibling keys then override it.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Named figure preset as a full config (scenario, solver, sweep).
ExperimentConfig preset_config(const std::string& name);

// 12-significant-digit text form used for every CSV number.
std::string fmt_sig(double x);

// CSV payloads. Flow/AP labels are 1-based in all emitted text.
std::string solution_csv(const ScenarioSpec& s, const PriceVector& prices, const OffloadMatrix& r);
std::string trace_csv(const DynamicsTrace& trace);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace offload
