#include "offload/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "offload/bounded.hpp"
#include "offload/unbounded.hpp"

namespace offload {

namespace {

// V_i restated from its definition for one AP, profile passed explicitly.
double ap_payoff_direct(const ScenarioSpec& s, int ap, const OffloadMatrix& r,
                        const PriceVector& prices) {
  double total = 0.0;
  for (int f = 0; f < s.num_flows(); ++f) {
    double flow_sum = 0.0;
    for (int j = 0; j < s.num_aps; ++j) flow_sum += r.at(f, j);
    const double rfi = r.at(f, ap);
    total += (flow_sum > 0.0 ? prices[f] * rfi / flow_sum : 0.0) - s.flows[f].costs[ap] * rfi;
  }
  return total;
}

// U_f restated from its definition.
double flow_payoff_direct(const ScenarioSpec& s, int flow, const OffloadMatrix& r,
                          const PriceVector& prices) {
  double log_sum = 0.0;
  for (int i = 0; i < s.num_aps; ++i) log_sum += std::log1p(r.at(flow, i));
  return s.flows[flow].utility.value(log_sum) - prices[flow];
}

// Candidate values for one coordinate: a uniform global sweep over [0, reach]
// plus geometric rungs around the current point in both directions.
std::vector<double> deviation_grid(double current, double reach, int grid_points) {
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(grid_points) + 2);
  grid.push_back(0.0);
  if (!(reach > 0.0)) return grid;
  const int uniform = std::max(grid_points / 2, 50);
  for (int i = 1; i <= uniform; ++i) grid.push_back(reach * i / uniform);
  const int rungs = std::max(grid_points - uniform, 50) / 2;
  for (int i = 0; i < rungs; ++i) {
    const double factor = std::pow(1.01, i + 1);
    const double center = current > 0.0 ? current : 1e-4;
    grid.push_back(std::min(center * factor, reach));
    grid.push_back(center / factor);
  }
  return grid;
}

}  // namespace

double certify_follower_ne(const ScenarioSpec& s, const OffloadMatrix& r, const PriceVector& prices,
                           const CertifyOptions& opts) {
  if (opts.grid_points < 100)
    throw std::invalid_argument("certify_follower_ne: grid_points must be >= 100");
  s.validate();

  double r_max = 0.0;
  for (int f = 0; f < s.num_flows(); ++f)
    for (int i = 0; i < s.num_aps; ++i) r_max = std::max(r_max, r.at(f, i));

  double max_gain = 0.0;
  OffloadMatrix trial = r;
  for (int ap = 0; ap < s.num_aps; ++ap) {
    const double base = ap_payoff_direct(s, ap, r, prices);
    for (int f = 0; f < s.num_flows(); ++f) {
      const double current = r.at(f, ap);
      // Cover the profile's own scale and the profitable-entry point C/(2e).
      double reach = opts.radius * std::max({r_max, current, prices[f] / (2.0 * s.flows[f].costs[ap])});
      if (s.bounded()) {
        const double headroom = std::max(*s.capacity - (r.ap_total(ap) - current), 0.0);
        reach = std::min(std::max(reach, 1e-9), headroom);
      }
      for (double candidate : deviation_grid(current, reach, opts.grid_points)) {
        trial.at(f, ap) = candidate;
        max_gain = std::max(max_gain, ap_payoff_direct(s, ap, trial, prices) - base);
      }
      trial.at(f, ap) = current;
    }
  }
  return max_gain;
}

double certify_leader_ne(const ScenarioSpec& s, const PriceVector& prices,
                         const CertifyOptions& opts) {
  if (opts.grid_points < 100)
    throw std::invalid_argument("certify_leader_ne: grid_points must be >= 100");
  s.validate();

  const std::vector<BoundedFlowSpec> bounded_flows =
      s.bounded() ? to_bounded_flows(s) : std::vector<BoundedFlowSpec>{};

  double max_gain = 0.0;
  for (int f = 0; f < s.num_flows(); ++f) {
    PriceVector trial = prices;

    auto utility_at = [&](double c) {
      trial[f] = c;
      if (s.bounded()) {
        const auto eq = solve_symmetric_followers(bounded_flows, trial, s.num_aps, *s.capacity);
        OffloadMatrix prof(s.num_flows(), s.num_aps);
        for (int g = 0; g < s.num_flows(); ++g)
          for (int i = 0; i < s.num_aps; ++i) prof.at(g, i) = eq.rho[g];
        return flow_payoff_direct(s, f, prof, trial);
      }
      const auto eq = follower_equilibrium(s, trial);
      return flow_payoff_direct(s, f, eq.offloads, trial);
    };

    const double base = utility_at(prices[f]);
    const double reach = std::max(opts.radius * std::max(prices[f], 0.25), 1.0);
    for (double candidate : deviation_grid(prices[f], reach, opts.grid_points)) {
      max_gain = std::max(max_gain, utility_at(candidate) - base);
    }
  }
  return max_gain;
}

}  // namespace offload
