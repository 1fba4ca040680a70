// Seeded random game instances for certification matrices and property tests.
#pragma once

#include <random>

#include "offload/model.hpp"

namespace offload {

// Unbounded draw: R in [2, max_aps], F in [1, max_flows], per-AP costs in
// [0.05, 2], weights in [0.5, 3], exponent in [0.3, 0.9].
ScenarioSpec random_unbounded_scenario(std::mt19937_64& rng, int max_flows = 3, int max_aps = 4);

// Bounded draw with per-flow symmetric costs in [0.05, 1] and B in [0.5, 20].
ScenarioSpec random_bounded_scenario(std::mt19937_64& rng, int max_flows = 5, int max_aps = 10);

}  // namespace offload
