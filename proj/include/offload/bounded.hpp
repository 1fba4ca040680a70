// Capacity-bounded regime under per-flow symmetric costs: the followers'
// symmetric equilibrium (water-filling on the shared shadow price), the
// one-step distributed price update, exact leader best responses, and the
// convergent best-response dynamics.
#pragma once

#include <vector>

#include "offload/model.hpp"

namespace offload {

struct BoundedFlowSpec {
  UtilitySpec utility;
  double cost = 0.1;  // e^f, identical across APs
};

// Followers' symmetric equilibrium with its KKT certificate.
struct SymmetricEquilibrium {
  std::vector<double> rho;  // per-flow per-AP offload
  double lambda = 0.0;      // capacity shadow price
  std::vector<double> nu;   // per-flow multipliers, nonzero only for idle flows
};

struct DynamicsOptions {
  enum class Schedule { RoundRobin, Jacobi };
  Schedule schedule = Schedule::RoundRobin;
  double tol = 1e-8;      // on ||C(n) - C(n-1)||_inf
  int max_iters = 10000;
};

struct DynamicsIterate {
  int n = 0;
  PriceVector prices;
  std::vector<double> rho;
  double delta = 0.0;  // ||C(n) - C(n-1)||_inf
};

struct DynamicsTrace {
  std::vector<DynamicsIterate> iterates;
  bool converged = false;
  int iterations = 0;

  const PriceVector& final_prices() const { return iterates.back().prices; }
  const std::vector<double>& final_rho() const { return iterates.back().rho; }
};

// dV_i/dr^f_i at a symmetric profile: C (R-1)/(R^2 rho) - e.
double marginal_g(double price, double cost, double rho, int num_aps);

// Water-filling solution of the followers' convex program. Flows with C^f = 0
// are idle (rho = 0) and excluded from the capacity split.
SymmetricEquilibrium solve_symmetric_followers(const std::vector<BoundedFlowSpec>& flows,
                                               const PriceVector& prices, int num_aps,
                                               double capacity);

// Psi: the rho^f component of the followers' equilibrium as a function of one
// flow's price, rivals fixed.
double psi_map(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity, int flow,
               double own_price, const PriceVector& rival_prices);

// Lambda: the shadow price at the same equilibrium.
double lambda_map(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity, int flow,
                  double own_price, const PriceVector& rival_prices);

// Root of e(1+rho) = u'(R log(1+rho)) (R-1)/R: the slack-regime per-flow
// offload target. Returns 0 when no positive root exists.
double contractor_interior_rho(const UtilitySpec& u, double cost, int num_aps);

// One step of the distributed price update at the profile rho(n). Slack
// branch: C = u'(R log(1+rho)) R rho/(1+rho). Binding branch: infer lambda
// from the flow's own optimality condition (clamped at 0) and return
// rho (lambda + e) R^2/(R-1). Flows with rho <= 0 are excluded from the
// binding sums; results below 0 are clamped to 0.
double price_update(const std::vector<BoundedFlowSpec>& flows, const std::vector<double>& rho,
                    int num_aps, double capacity, int flow);

// Exact best response of one leader to fixed rival prices: bisection on the
// closed-form derivative of U_f along the followers' equilibrium response.
double leader_best_response(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity,
                            int flow, const PriceVector& rival_prices);

// Best-response dynamics of the leaders' game from C(0). Each iterate records
// the price vector and the followers' equilibrium it induces.
DynamicsTrace run_dynamics(const std::vector<BoundedFlowSpec>& flows, int num_aps, double capacity,
                           const PriceVector& initial_prices, const DynamicsOptions& opts = {});

// Convenience: dynamics from the canonical small start, returning the final
// (prices, equilibrium) pair.
struct BoundedSolution {
  PriceVector prices;
  SymmetricEquilibrium equilibrium;
  bool converged = false;
  int iterations = 0;
};
BoundedSolution solve_bounded_sne(const std::vector<BoundedFlowSpec>& flows, int num_aps,
                                  double capacity, const DynamicsOptions& opts = {});

// Extracts the symmetric-cost bounded flow list from a scenario; throws
// std::invalid_argument when any flow has asymmetric per-AP costs.
std::vector<BoundedFlowSpec> to_bounded_flows(const ScenarioSpec& s);

}  // namespace offload
