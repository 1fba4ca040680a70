#include "offload/bounded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace offload {

namespace {

constexpr double kBindingSlackRel = 1e-9;  // slack-vs-binding test margin on B

double water_fill_sum(const std::vector<BoundedFlowSpec>& flows, const PriceVector& prices,
                      int num_aps, double lambda) {
  const double k = (num_aps - 1.0) / (static_cast<double>(num_aps) * num_aps);
  double total = 0.0;
  for (size_t f = 0; f < flows.size(); ++f)
    if (prices[f] > 0.0) total += prices[f] * k / (flows[f].cost + lambda);
  return total;
}

void check_bounded_args(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity) {
  if (num_aps < 2) throw std::invalid_argument("bounded game: need at least 2 APs");
  if (!(capacity > 0.0)) throw std::invalid_argument("bounded game: capacity must be > 0");
  for (const auto& fl : flows) {
    fl.utility.validate();
    if (!(fl.cost > 0.0)) throw std::invalid_argument("bounded game: flow cost must be > 0");
  }
}

}  // namespace

double marginal_g(double price, double cost, double rho, int num_aps) {
  if (!(rho > 0.0)) throw std::domain_error("marginal_g: rho must be > 0");
  if (num_aps < 2) throw std::invalid_argument("marginal_g: need at least 2 APs");
  const double R = num_aps;
  return price * (R - 1.0) / (R * R * rho) - cost;
}

SymmetricEquilibrium solve_symmetric_followers(const std::vector<BoundedFlowSpec>& flows,
                                               const PriceVector& prices, int num_aps,
                                               double capacity) {
  check_bounded_args(flows, num_aps, capacity);
  if (prices.size() != flows.size())
    throw std::invalid_argument("solve_symmetric_followers: price vector size mismatch");
  for (double c : prices)
    if (!(c >= 0.0)) throw std::invalid_argument("solve_symmetric_followers: prices must be >= 0");

  const double R = num_aps;
  const double k = (R - 1.0) / (R * R);

  double lambda = 0.0;
  if (water_fill_sum(flows, prices, num_aps, 0.0) > capacity) {
    double hi = 1.0;
    while (water_fill_sum(flows, prices, num_aps, hi) > capacity) hi *= 2.0;
    double lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (water_fill_sum(flows, prices, num_aps, mid) > capacity)
        lo = mid;
      else
        hi = mid;
    }
    lambda = 0.5 * (lo + hi);
  }

  SymmetricEquilibrium eq;
  eq.lambda = lambda;
  eq.rho.resize(flows.size(), 0.0);
  eq.nu.resize(flows.size(), 0.0);
  for (size_t f = 0; f < flows.size(); ++f) {
    if (prices[f] > 0.0) {
      eq.rho[f] = prices[f] * k / (flows[f].cost + lambda);
    } else {
      eq.nu[f] = lambda + flows[f].cost;  // keeps (B1) satisfied at rho = 0
    }
  }
  return eq;
}

double psi_map(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity, int flow,
               double own_price, const PriceVector& rival_prices) {
  PriceVector prices = rival_prices;
  prices[flow] = own_price;
  return solve_symmetric_followers(flows, prices, num_aps, capacity).rho[flow];
}

double lambda_map(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity, int flow,
                  double own_price, const PriceVector& rival_prices) {
  PriceVector prices = rival_prices;
  prices[flow] = own_price;
  return solve_symmetric_followers(flows, prices, num_aps, capacity).lambda;
}

double contractor_interior_rho(const UtilitySpec& u, double cost, int num_aps) {
  if (num_aps < 2) throw std::invalid_argument("contractor_interior_rho: need at least 2 APs");
  const double R = num_aps;
  // gap(rho) = e(1+rho) - u'(R log(1+rho)) (R-1)/R; increasing, one sign change.
  auto gap = [&](double rho) {
    return cost * (1.0 + rho) - u.deriv(R * std::log1p(rho)) * (R - 1.0) / R;
  };
  if (!u.infinite_marginal_at_zero() && gap(0.0) >= 0.0) return 0.0;

  double hi = 1.0;
  while (gap(hi) < 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double price_update(const std::vector<BoundedFlowSpec>& flows, const std::vector<double>& rho,
                    int num_aps, double capacity, int flow) {
  check_bounded_args(flows, num_aps, capacity);
  if (rho.size() != flows.size()) throw std::invalid_argument("price_update: rho size mismatch");
  const double rf = rho[flow];
  if (!(rf > 0.0)) throw std::domain_error("price_update: updating flow must have rho > 0");

  const double R = num_aps;
  const UtilitySpec& u = flows[flow].utility;
  const double du = u.deriv(R * std::log1p(rf));

  double rho_total = 0.0;
  for (double r : rho) rho_total += r;
  if (rho_total < capacity - kBindingSlackRel * capacity)
    return std::max(du * R * rf / (1.0 + rf), 0.0);

  double cost_over_rho = 0.0, inv_rho = 0.0;
  for (size_t g = 0; g < flows.size(); ++g) {
    if (rho[g] <= 0.0) continue;  // idle flows leave the capacity split
    cost_over_rho += flows[g].cost / rho[g];
    inv_rho += 1.0 / rho[g];
  }
  double lambda = (du * (R - 1.0) / (R * rf * (1.0 + rf)) - cost_over_rho) / inv_rho;
  lambda = std::max(lambda, 0.0);
  return std::max(rf * (lambda + flows[flow].cost) * R * R / (R - 1.0), 0.0);
}

double leader_best_response(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity,
                            int flow, const PriceVector& rival_prices) {
  check_bounded_args(flows, num_aps, capacity);
  const double R = num_aps;
  const UtilitySpec& u = flows[flow].utility;
  const double cost = flows[flow].cost;

  // dU_f/dC at own price c, with Psi' in closed form from the water-filling
  // KKT: slack Psi' = (R-1)/(R^2 e); binding
  // Psi' = (R-1)/(R^2 (e+lam)) [1 - (rho_f/(e+lam)) / sum_g rho_g/(e_g+lam)].
  auto du_dc = [&](double c) {
    PriceVector prices = rival_prices;
    prices[flow] = c;
    SymmetricEquilibrium eq = solve_symmetric_followers(flows, prices, num_aps, capacity);
    const double rf = eq.rho[flow];
    double psi_prime;
    if (eq.lambda <= 0.0) {
      psi_prime = (R - 1.0) / (R * R * cost);
    } else {
      double denom = 0.0;
      for (size_t g = 0; g < flows.size(); ++g)
        if (eq.rho[g] > 0.0) denom += eq.rho[g] / (flows[g].cost + eq.lambda);
      psi_prime = (R - 1.0) / (R * R * (cost + eq.lambda)) *
                  (1.0 - (rf / (cost + eq.lambda)) / denom);
    }
    return u.deriv(R * std::log1p(rf)) * R / (1.0 + rf) * psi_prime - 1.0;
  };

  // Marginal utility of entering at c -> 0+: u'(0)(R-1)/(R(e+lam0)) - 1.
  if (!u.infinite_marginal_at_zero()) {
    PriceVector prices = rival_prices;
    prices[flow] = 0.0;
    const double lam0 = solve_symmetric_followers(flows, prices, num_aps, capacity).lambda;
    if (u.deriv(0.0) * (R - 1.0) / (R * (cost + lam0)) <= 1.0) return 0.0;
  }

  double hi = 1.0;
  int doublings = 0;
  while (du_dc(hi) > 0.0) {
    hi *= 2.0;
    if (++doublings > 1024)
      throw std::runtime_error("leader_best_response: bracket expansion failed");
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (du_dc(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

DynamicsTrace run_dynamics(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity,
                           const PriceVector& initial_prices, const DynamicsOptions& opts) {
  check_bounded_args(flows, num_aps, capacity);
  if (initial_prices.size() != flows.size())
    throw std::invalid_argument("run_dynamics: initial price vector size mismatch");
  const int F = static_cast<int>(flows.size());

  // Flows whose slack-regime target is already 0 sit out at exactly 0.
  std::vector<bool> pinned(F, false);
  PriceVector prices = initial_prices;
  for (int f = 0; f < F; ++f) {
    if (!flows[f].utility.infinite_marginal_at_zero() &&
        contractor_interior_rho(flows[f].utility, flows[f].cost, num_aps) <= 0.0) {
      pinned[f] = true;
      prices[f] = 0.0;
    }
  }

  DynamicsTrace trace;
  trace.iterates.reserve(64);
  {
    DynamicsIterate start;
    start.n = 0;
    start.prices = prices;
    start.rho = solve_symmetric_followers(flows, prices, num_aps, capacity).rho;
    start.delta = std::numeric_limits<double>::quiet_NaN();
    trace.iterates.push_back(std::move(start));
  }
  for (int n = 1; n <= opts.max_iters; ++n) {
    const PriceVector previous = prices;
    if (opts.schedule == DynamicsOptions::Schedule::Jacobi) {
      PriceVector next = prices;
      for (int f = 0; f < F; ++f)
        if (!pinned[f]) next[f] = leader_best_response(flows, num_aps, capacity, f, prices);
      prices = next;
    } else {
      for (int f = 0; f < F; ++f)
        if (!pinned[f]) prices[f] = leader_best_response(flows, num_aps, capacity, f, prices);
    }

    double delta = 0.0;
    for (int f = 0; f < F; ++f) delta = std::max(delta, std::abs(prices[f] - previous[f]));

    DynamicsIterate it;
    it.n = n;
    it.prices = prices;
    it.rho = solve_symmetric_followers(flows, prices, num_aps, capacity).rho;
    it.delta = delta;
    trace.iterates.push_back(std::move(it));
    trace.iterations = n;
    if (delta <= opts.tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

BoundedSolution solve_bounded_sne(const std::vector<BoundedFlowSpec>& flows, int num_aps,
                                  double capacity, const DynamicsOptions& opts) {
  PriceVector start(flows.size(), 0.01);
  DynamicsTrace trace = run_dynamics(flows, num_aps, capacity, start, opts);
  BoundedSolution sol;
  sol.prices = trace.final_prices();
  sol.equilibrium = solve_symmetric_followers(flows, sol.prices, num_aps, capacity);
  sol.converged = trace.converged;
  sol.iterations = trace.iterations;
  return sol;
}

std::vector<BoundedFlowSpec> to_bounded_flows(const ScenarioSpec& s) {
  std::vector<BoundedFlowSpec> flows;
  flows.reserve(s.flows.size());
  for (size_t f = 0; f < s.flows.size(); ++f) {
    if (!s.flows[f].symmetric_costs())
      throw std::invalid_argument("flows[" + std::to_string(f) +
                                  "]: bounded regime requires identical per-AP costs");
    flows.push_back({s.flows[f].utility, s.flows[f].costs.front()});
  }
  return flows;
}

}  // namespace offload
