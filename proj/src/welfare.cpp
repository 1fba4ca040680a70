#include "offload/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace offload {

namespace {

// Per-flow stationary offload of the bounded social problem at multiplier mu:
// root of u'(R log(1+rho)) R/(1+rho) = R e + mu (decreasing LHS).
double bounded_social_rho(const BoundedFlowSpec& flow, int num_aps, double mu) {
  const double R = num_aps;
  auto gap = [&](double rho) {
    return flow.utility.deriv(R * std::log1p(rho)) * R / (1.0 + rho) - R * flow.cost - mu;
  };
  if (!flow.utility.infinite_marginal_at_zero() && gap(0.0) <= 0.0) return 0.0;
  double hi = 1.0;
  while (gap(hi) > 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 0.0 && gap(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double system_utility_at_sne_bounded(const std::vector<BoundedFlowSpec>& flows, int num_aps,
                                     const std::vector<double>& rho) {
  if (rho.size() != flows.size())
    throw std::invalid_argument("system_utility_at_sne_bounded: rho size mismatch");
  const double R = num_aps;
  double total = 0.0;
  for (size_t f = 0; f < flows.size(); ++f)
    total += flows[f].utility.value(R * std::log1p(rho[f])) - R * flows[f].cost * rho[f];
  return total;
}

double system_utility_at_sne_unbounded(const ScenarioSpec& s, const UnboundedEquilibrium& eq) {
  double total = 0.0;
  for (int f = 0; f < s.num_flows(); ++f) {
    double log_sum = 0.0, cost_sum = 0.0;
    for (int i = 0; i < s.num_aps; ++i) {
      log_sum += std::log1p(eq.offloads.at(f, i));
      cost_sum += s.flows[f].costs[i] * eq.offloads.at(f, i);
    }
    total += s.flows[f].utility.value(log_sum) - cost_sum;
  }
  return total;
}

SocialOptimumBounded social_optimum_bounded(const std::vector<BoundedFlowSpec>& flows, int num_aps,
                                            double capacity) {
  if (num_aps < 2) throw std::invalid_argument("social_optimum_bounded: need at least 2 APs");
  if (!(capacity > 0.0)) throw std::invalid_argument("social_optimum_bounded: capacity must be > 0");

  auto total_at = [&](double mu) {
    double t = 0.0;
    for (const auto& fl : flows) t += bounded_social_rho(fl, num_aps, mu);
    return t;
  };

  SocialOptimumBounded out;
  if (total_at(0.0) > capacity) {
    double hi = 1.0;
    while (total_at(hi) > capacity) hi *= 2.0;
    double lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (total_at(mid) > capacity)
        lo = mid;
      else
        hi = mid;
    }
    out.mu = 0.5 * (lo + hi);
  }
  out.rho.resize(flows.size());
  for (size_t f = 0; f < flows.size(); ++f) out.rho[f] = bounded_social_rho(flows[f], num_aps, out.mu);
  out.utility = system_utility_at_sne_bounded(flows, num_aps, out.rho);
  return out;
}

SocialOptimumUnbounded social_optimum_unbounded(const ScenarioSpec& s) {
  if (s.bounded()) throw std::invalid_argument("social_optimum_unbounded: scenario is bounded");
  SocialOptimumUnbounded out;
  out.offloads = OffloadMatrix(s.num_flows(), s.num_aps);

  for (int f = 0; f < s.num_flows(); ++f) {
    const auto& flow = s.flows[f];
    const double e_min = *std::min_element(flow.costs.begin(), flow.costs.end());

    // KKT: r_i = max(t/e_i - 1, 0) with t = u'(T), T = sum_i log(1+r_i).
    // gap(t) = u'(T(t)) - t is strictly decreasing; bisect its root.
    auto log_total = [&](double t) {
      double T = 0.0;
      for (double e : flow.costs)
        if (t > e) T += std::log(t / e);
      return T;
    };
    auto gap = [&](double t) {
      const double T = log_total(t);
      if (T <= 0.0)
        return flow.utility.infinite_marginal_at_zero() ? 1.0 : flow.utility.deriv(0.0) - t;
      return flow.utility.deriv(T) - t;
    };

    if (!flow.utility.infinite_marginal_at_zero() && flow.utility.deriv(0.0) <= e_min)
      continue;  // no AP worth entering, r = 0

    double lo = e_min, hi = std::max(2.0 * e_min, 1.0);
    while (gap(hi) > 0.0) hi *= 2.0;
    for (int iter = 0; iter < 300 && hi - lo > 1e-14 * std::max(1.0, hi); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (gap(mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    for (int i = 0; i < s.num_aps; ++i)
      out.offloads.at(f, i) = std::max(t / flow.costs[i] - 1.0, 0.0);
  }

  for (int f = 0; f < s.num_flows(); ++f) {
    double log_sum = 0.0, cost_sum = 0.0;
    for (int i = 0; i < s.num_aps; ++i) {
      log_sum += std::log1p(out.offloads.at(f, i));
      cost_sum += s.flows[f].costs[i] * out.offloads.at(f, i);
    }
    out.utility += s.flows[f].utility.value(log_sum) - cost_sum;
  }
  return out;
}

WelfareReport poa(const ScenarioSpec& s) {
  s.validate();
  WelfareReport report;
  if (s.bounded()) {
    const auto flows = to_bounded_flows(s);
    const BoundedSolution sol = solve_bounded_sne(flows, s.num_aps, *s.capacity);
    if (!sol.converged) throw std::runtime_error("poa: dynamics did not converge");
    report.u_ne = system_utility_at_sne_bounded(flows, s.num_aps, sol.equilibrium.rho);
    const auto opt = social_optimum_bounded(flows, s.num_aps, *s.capacity);
    report.u_opt = opt.utility;
    report.optimum_profile = OffloadMatrix(s.num_flows(), s.num_aps);
    for (int f = 0; f < s.num_flows(); ++f)
      for (int i = 0; i < s.num_aps; ++i) report.optimum_profile.at(f, i) = opt.rho[f];
  } else {
    const UnboundedEquilibrium eq = solve_unbounded_sne(s);
    report.u_ne = system_utility_at_sne_unbounded(s, eq);
    const auto opt = social_optimum_unbounded(s);
    report.u_opt = opt.utility;
    report.optimum_profile = opt.offloads;
  }
  if (!(report.u_ne > 0.0))
    throw std::domain_error("poa: equilibrium system utility is not positive, PoA undefined");
  report.poa = report.u_opt / report.u_ne;
  return report;
}

}  // namespace offload
