// Brute-force equilibrium verifiers: unilateral deviation search for APs and
// flows. Payoffs are evaluated from their definitions here, independent of
// the analytic solver paths they certify.
#pragma once

#include "offload/model.hpp"

namespace offload {

struct CertifyOptions {
  int grid_points = 2000;
  double radius = 4.0;  // search reach as a multiple of the candidate magnitude
};

// Max payoff improvement any single AP can find by moving one r^f_i along a
// grid (geometric around the candidate plus a coarse global sweep), holding
// everyone else fixed and respecting the per-AP capacity when bounded.
// A profile is certified as a followers' NE when the result is <= tol.
double certify_follower_ne(const ScenarioSpec& s, const OffloadMatrix& r, const PriceVector& prices,
                           const CertifyOptions& opts = {});

// Max utility improvement any single flow can find by moving its price along
// a grid, with the followers re-equilibrated at every candidate price.
double certify_leader_ne(const ScenarioSpec& s, const PriceVector& prices,
                         const CertifyOptions& opts = {});

}  // namespace offload
