#include "offload/random_scenarios.hpp"

namespace offload {

namespace {

UtilitySpec random_utility(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> family(0, 2);
  std::uniform_real_distribution<double> weight(0.5, 3.0);
  std::uniform_real_distribution<double> exponent(0.3, 0.9);
  switch (family(rng)) {
    case 0: return linear_utility(weight(rng));
    case 1: return power_utility(weight(rng), exponent(rng));
    default: return log_utility(weight(rng));
  }
}

}  // namespace

ScenarioSpec random_unbounded_scenario(std::mt19937_64& rng, int max_flows, int max_aps) {
  std::uniform_int_distribution<int> num_flows(1, max_flows);
  std::uniform_int_distribution<int> num_aps(2, max_aps);
  std::uniform_real_distribution<double> cost(0.05, 2.0);
  ScenarioSpec s;
  s.num_aps = num_aps(rng);
  const int F = num_flows(rng);
  for (int f = 0; f < F; ++f) {
    FlowSpec flow;
    flow.utility = random_utility(rng);
    for (int i = 0; i < s.num_aps; ++i) flow.costs.push_back(cost(rng));
    s.flows.push_back(std::move(flow));
  }
  return s;
}

ScenarioSpec random_bounded_scenario(std::mt19937_64& rng, int max_flows, int max_aps) {
  std::uniform_int_distribution<int> num_flows(1, max_flows);
  std::uniform_int_distribution<int> num_aps(2, max_aps);
  std::uniform_real_distribution<double> cost(0.05, 1.0);
  std::uniform_real_distribution<double> capacity(0.5, 20.0);
  ScenarioSpec s;
  s.num_aps = num_aps(rng);
  s.capacity = capacity(rng);
  const int F = num_flows(rng);
  for (int f = 0; f < F; ++f) {
    FlowSpec flow;
    flow.utility = random_utility(rng);
    flow.costs.assign(s.num_aps, cost(rng));
    s.flows.push_back(std::move(flow));
  }
  return s;
}

}  // namespace offload
