// Domain types for the offloading pricing game: utility families, scenario
// description, offload/price profiles, and the raw per-player payoffs.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace offload {

enum class UtilityFamily { Linear, PowerLaw, Logarithmic };

// Concave per-flow utility u_f: value(0)=0, deriv>0, second derivative <= 0.
struct UtilitySpec {
  UtilityFamily family = UtilityFamily::Linear;
  double weight = 1.0;    // w > 0
  double exponent = 0.5;  // b in (0,1), PowerLaw only

  double value(double x) const;
  // deriv is singular at x=0 for PowerLaw; throws std::domain_error there.
  double deriv(double x) const;
  // True when u'(x) -> infinity as x -> 0+ (PowerLaw). Solvers branch on this
  // instead of evaluating deriv(0).
  bool infinite_marginal_at_zero() const { return family == UtilityFamily::PowerLaw; }

  void validate() const;  // throws std::invalid_argument on bad parameters
  std::string family_name() const;
};

UtilitySpec linear_utility(double w);
UtilitySpec power_utility(double w, double b);
UtilitySpec log_utility(double w);

struct FlowSpec {
  UtilitySpec utility;
  std::vector<double> costs;  // e^f_i > 0, one per AP

  // True when every AP has the same cost for this flow.
  bool symmetric_costs(double rel_tol = 1e-12) const;
};

// A full game instance. capacity == nullopt means the unbounded regime.
struct ScenarioSpec {
  int num_aps = 2;
  std::vector<FlowSpec> flows;
  std::optional<double> capacity;

  int num_flows() const { return static_cast<int>(flows.size()); }
  bool bounded() const { return capacity.has_value(); }
  void validate() const;  // throws std::invalid_argument with a field message
};

using PriceVector = std::vector<double>;  // C^f >= 0, indexed by flow

// r^f_i >= 0 laid out row-major by flow.
class OffloadMatrix {
 public:
  OffloadMatrix() = default;
  OffloadMatrix(int num_flows, int num_aps, double fill = 0.0)
      : flows_(num_flows), aps_(num_aps), data_(static_cast<size_t>(num_flows) * num_aps, fill) {}

  double& at(int flow, int ap) { return data_[index(flow, ap)]; }
  double at(int flow, int ap) const { return data_[index(flow, ap)]; }
  int num_flows() const { return flows_; }
  int num_aps() const { return aps_; }

  double flow_total(int flow) const;  // sum_i r^f_i
  double ap_total(int ap) const;      // sum_f r^f_i

 private:
  size_t index(int flow, int ap) const;
  int flows_ = 0, aps_ = 0;
  std::vector<double> data_;
};

// True when r is a feasible profile for s: entries nonnegative and, for a
// bounded scenario, every AP's total within capacity plus tol.
bool respects_capacity(const ScenarioSpec& s, const OffloadMatrix& r, double tol = 1e-9);

// Flow utility U_f = u_f(sum_i log(1+r^f_i)) - C^f. Natural logs.
double flow_payoff(const ScenarioSpec& s, int flow, const OffloadMatrix& r, const PriceVector& c);

// AP payoff V_i = sum_f [C^f r^f_i / sum_j r^f_j - e^f_i r^f_i].
// A flow with sum_j r^f_j = 0 contributes no payment share (0/0 := 0).
double ap_payoff(const ScenarioSpec& s, int ap, const OffloadMatrix& r, const PriceVector& c);

}  // namespace offload
