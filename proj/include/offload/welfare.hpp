// Social-optimum solvers for both regimes and price-of-anarchy reports.
#pragma once

#include <vector>

#include "offload/bounded.hpp"
#include "offload/model.hpp"
#include "offload/unbounded.hpp"

namespace offload {

struct WelfareReport {
  double u_ne = 0.0;   // total system utility at the SNE
  double u_opt = 0.0;  // optimal social utility
  double poa = 0.0;    // u_opt / u_ne
  OffloadMatrix optimum_profile;
};

struct SocialOptimumBounded {
  std::vector<double> rho;  // per-flow per-AP offload
  double mu = 0.0;          // capacity multiplier
  double utility = 0.0;
};

struct SocialOptimumUnbounded {
  OffloadMatrix offloads;
  double utility = 0.0;
};

// System utility at a symmetric bounded equilibrium. Payments transfer
// between leaders and followers, so C drops out:
// sum_f u_f(R log(1+rho^f)) - sum_f R e^f rho^f.
double system_utility_at_sne_bounded(const std::vector<BoundedFlowSpec>& flows, int num_aps,
                                     const std::vector<double>& rho);

// Same cancellation in the unbounded regime:
// sum_f u_f(sum_i log(1+r^f_i)) - sum_f sum_i e^f_i r^f_i.
double system_utility_at_sne_unbounded(const ScenarioSpec& s, const UnboundedEquilibrium& eq);

// max sum_f [u_f(R log(1+rho^f)) - R e^f rho^f] s.t. sum rho <= B, by
// water-filling on the capacity multiplier.
SocialOptimumBounded social_optimum_bounded(const std::vector<BoundedFlowSpec>& flows, int num_aps,
                                            double capacity);

// Per-flow separable concave maximization over r^f_i >= 0, solved by a scalar
// bisection on the common marginal utility.
SocialOptimumUnbounded social_optimum_unbounded(const ScenarioSpec& s);

// Composes the regime's SNE solver and social optimum. Throws
// std::domain_error when U_NE <= 0 (PoA undefined).
WelfareReport poa(const ScenarioSpec& s);

}  // namespace offload
