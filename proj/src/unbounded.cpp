#include "offload/unbounded.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace offload {

double follower_best_response(double price, double cost, double others_total) {
  if (others_total <= 0.0) return 0.0;  // share term undefined; no profitable lone entry
  if (cost * others_total > price) return 0.0;
  const double r = std::sqrt(price * others_total / cost) - others_total;
  return std::max(r, 0.0);
}

std::vector<std::vector<int>> select_ap_sets(const ScenarioSpec& s) {
  if (s.num_aps < 2) throw std::invalid_argument("select_ap_sets: need at least 2 APs");
  std::vector<std::vector<int>> sets;
  sets.reserve(s.flows.size());
  for (const auto& flow : s.flows) {
    std::vector<int> order(s.num_aps);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return flow.costs[a] < flow.costs[b]; });
    std::vector<int> set = {order[0], order[1]};
    double cost_sum = flow.costs[order[0]] + flow.costs[order[1]];
    for (int j = 2; j < s.num_aps; ++j) {
      const double threshold = cost_sum / static_cast<double>(set.size() - 1);
      if (!(flow.costs[order[j]] < threshold)) break;
      set.push_back(order[j]);
      cost_sum += flow.costs[order[j]];
    }
    std::sort(set.begin(), set.end());
    sets.push_back(std::move(set));
  }
  return sets;
}

std::vector<double> participation_coefficients(const FlowSpec& flow, const std::vector<int>& ap_set,
                                               int num_aps) {
  std::vector<double> k(num_aps, 0.0);
  const double m = static_cast<double>(ap_set.size()) - 1.0;
  double cost_sum = 0.0;
  for (int i : ap_set) cost_sum += flow.costs[i];
  for (int i : ap_set) k[i] = (m / cost_sum) * (1.0 - m * flow.costs[i] / cost_sum);
  return k;
}

UnboundedEquilibrium follower_equilibrium(const ScenarioSpec& s, const PriceVector& prices) {
  if (static_cast<int>(prices.size()) != s.num_flows())
    throw std::invalid_argument("follower_equilibrium: price vector size mismatch");
  UnboundedEquilibrium eq;
  eq.ap_sets = select_ap_sets(s);
  eq.prices = prices;
  eq.offloads = OffloadMatrix(s.num_flows(), s.num_aps);
  eq.coefficients.reserve(s.flows.size());
  for (int f = 0; f < s.num_flows(); ++f) {
    auto k = participation_coefficients(s.flows[f], eq.ap_sets[f], s.num_aps);
    for (int i : eq.ap_sets[f]) eq.offloads.at(f, i) = k[i] * prices[f];
    eq.coefficients.push_back(std::move(k));
  }
  return eq;
}

double leader_optimal_price(const ScenarioSpec& s, int flow) {
  const auto sets = select_ap_sets(s);
  const auto& set = sets[flow];
  const auto k = participation_coefficients(s.flows[flow], set, s.num_aps);
  const UtilitySpec& u = s.flows[flow].utility;

  // d/dC [u(sum log(1+k_i C)) - C]; strictly decreasing in C.
  auto deriv = [&](double c) {
    double total = 0.0, weighted = 0.0;
    for (int i : set) {
      total += std::log1p(k[i] * c);
      weighted += k[i] / (1.0 + k[i] * c);
    }
    return u.deriv(total) * weighted - 1.0;
  };

  if (!u.infinite_marginal_at_zero()) {
    double k_sum = 0.0;
    for (int i : set) k_sum += k[i];
    if (u.deriv(0.0) * k_sum <= 1.0) return 0.0;
  }

  double hi = 1.0;
  int doublings = 0;
  while (deriv(hi) > 0.0) {
    hi *= 2.0;
    if (++doublings > 1024)
      throw std::runtime_error("leader_optimal_price: bracket expansion failed (malformed utility)");
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-10 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);  // mid > 0 always, so deriv is finite
    if (deriv(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

UnboundedEquilibrium solve_unbounded_sne(const ScenarioSpec& s) {
  if (s.bounded()) throw std::invalid_argument("solve_unbounded_sne: scenario has a capacity bound");
  PriceVector prices(s.num_flows());
  for (int f = 0; f < s.num_flows(); ++f) prices[f] = leader_optimal_price(s, f);
  return follower_equilibrium(s, prices);
}

}  // namespace offload
