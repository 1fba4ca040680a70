// Closed-form equilibria for the capacity-unbounded regime: per-flow AP set
// selection, the followers' NE, and each leader's unique optimal price.
#pragma once

#include <vector>

#include "offload/model.hpp"

namespace offload {

struct UnboundedEquilibrium {
  std::vector<std::vector<int>> ap_sets;        // S_f, ascending AP indices
  OffloadMatrix offloads;                       // r~
  PriceVector prices;                           // C~
  std::vector<std::vector<double>> coefficients;  // k_i per flow, 0 outside S_f
};

// Best response of one AP in a single-flow game given the rivals'
// total. Returns 0 when e * others_total > C and at others_total = 0.
double follower_best_response(double price, double cost, double others_total);

// Greedy selection: sort APs by ascending cost (ties by index), seed with the two
// cheapest, extend while e_next < sum(S)/( |S|-1 ).
std::vector<std::vector<int>> select_ap_sets(const ScenarioSpec& s);

// Coefficients k_i for one flow's selected set.
std::vector<double> participation_coefficients(const FlowSpec& flow, const std::vector<int>& ap_set,
                                               int num_aps);

// Followers' NE at given prices (closed form on the selected sets); prices echoed.
UnboundedEquilibrium follower_equilibrium(const ScenarioSpec& s, const PriceVector& prices);

// argmax_{C>=0} u_f(sum_{i in S_f} log(1+k_i C)) - C, via bisection on the
// strictly decreasing derivative. Returns 0 when the derivative at 0+ is <= 0.
double leader_optimal_price(const ScenarioSpec& s, int flow);

// Full Stackelberg equilibrium: AP sets, per-flow optimal prices, offloads.
UnboundedEquilibrium solve_unbounded_sne(const ScenarioSpec& s);

}  // namespace offload
