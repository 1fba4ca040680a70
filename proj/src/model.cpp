#include "offload/model.hpp"

#include <cmath>
#include <stdexcept>

namespace offload {

double UtilitySpec::value(double x) const {
  if (x < 0.0) throw std::domain_error("utility value: x must be >= 0");
  switch (family) {
    case UtilityFamily::Linear: return weight * x;
    case UtilityFamily::PowerLaw: return weight * std::pow(x, exponent);
    case UtilityFamily::Logarithmic: return weight * std::log1p(x);
  }
  return 0.0;
}

double UtilitySpec::deriv(double x) const {
  switch (family) {
    case UtilityFamily::Linear:
      if (x < 0.0) throw std::domain_error("utility deriv: x must be >= 0");
      return weight;
    case UtilityFamily::PowerLaw:
      if (x <= 0.0) throw std::domain_error("utility deriv: power-law is singular at x <= 0");
      return weight * exponent * std::pow(x, exponent - 1.0);
    case UtilityFamily::Logarithmic:
      if (x < 0.0) throw std::domain_error("utility deriv: x must be >= 0");
      return weight / (1.0 + x);
  }
  return 0.0;
}

void UtilitySpec::validate() const {
  if (!(weight > 0.0)) throw std::invalid_argument("utility weight must be > 0");
  if (family == UtilityFamily::PowerLaw && !(exponent > 0.0 && exponent < 1.0))
    throw std::invalid_argument("power-law exponent must lie in (0, 1)");
}

std::string UtilitySpec::family_name() const {
  switch (family) {
    case UtilityFamily::Linear: return "linear";
    case UtilityFamily::PowerLaw: return "power";
    case UtilityFamily::Logarithmic: return "logarithmic";
  }
  return "?";
}

UtilitySpec linear_utility(double w) { return {UtilityFamily::Linear, w, 0.5}; }
UtilitySpec power_utility(double w, double b) { return {UtilityFamily::PowerLaw, w, b}; }
UtilitySpec log_utility(double w) { return {UtilityFamily::Logarithmic, w, 0.5}; }

bool FlowSpec::symmetric_costs(double rel_tol) const {
  if (costs.empty()) return true;
  const double e0 = costs.front();
  for (double e : costs)
    if (std::abs(e - e0) > rel_tol * std::max(1.0, std::abs(e0))) return false;
  return true;
}

void ScenarioSpec::validate() const {
  if (num_aps < 2) throw std::invalid_argument("num_aps: at least 2 APs required");
  if (flows.empty()) throw std::invalid_argument("flows: at least one flow required");
  for (size_t f = 0; f < flows.size(); ++f) {
    const auto& fl = flows[f];
    fl.utility.validate();
    if (static_cast<int>(fl.costs.size()) != num_aps)
      throw std::invalid_argument("flows[" + std::to_string(f) + "].costs: expected " +
                                  std::to_string(num_aps) + " entries");
    for (size_t i = 0; i < fl.costs.size(); ++i)
      if (!(fl.costs[i] > 0.0))
        throw std::invalid_argument("flows[" + std::to_string(f) + "].costs[" +
                                    std::to_string(i) + "]: must be > 0");
  }
  if (capacity && !(*capacity >= 0.0))
    throw std::invalid_argument("capacity: must be >= 0 or unbounded");
}

size_t OffloadMatrix::index(int flow, int ap) const {
  if (flow < 0 || flow >= flows_ || ap < 0 || ap >= aps_)
    throw std::out_of_range("OffloadMatrix index");
  return static_cast<size_t>(flow) * aps_ + ap;
}

double OffloadMatrix::flow_total(int flow) const {
  double t = 0.0;
  for (int i = 0; i < aps_; ++i) t += at(flow, i);
  return t;
}

double OffloadMatrix::ap_total(int ap) const {
  double t = 0.0;
  for (int f = 0; f < flows_; ++f) t += at(f, ap);
  return t;
}

bool respects_capacity(const ScenarioSpec& s, const OffloadMatrix& r, double tol) {
  for (int f = 0; f < r.num_flows(); ++f)
    for (int i = 0; i < r.num_aps(); ++i)
      if (r.at(f, i) < 0.0) return false;
  if (!s.bounded()) return true;
  for (int i = 0; i < r.num_aps(); ++i)
    if (r.ap_total(i) > *s.capacity + tol) return false;
  return true;
}

double flow_payoff(const ScenarioSpec& s, int flow, const OffloadMatrix& r, const PriceVector& c) {
  if (r.num_flows() != s.num_flows() || r.num_aps() != s.num_aps ||
      static_cast<int>(c.size()) != s.num_flows())
    throw std::invalid_argument("flow_payoff: dimension mismatch");
  double sum = 0.0;
  for (int i = 0; i < s.num_aps; ++i) sum += std::log1p(r.at(flow, i));
  return s.flows[flow].utility.value(sum) - c[flow];
}

double ap_payoff(const ScenarioSpec& s, int ap, const OffloadMatrix& r, const PriceVector& c) {
  if (r.num_flows() != s.num_flows() || r.num_aps() != s.num_aps ||
      static_cast<int>(c.size()) != s.num_flows())
    throw std::invalid_argument("ap_payoff: dimension mismatch");
  double total = 0.0;
  for (int f = 0; f < s.num_flows(); ++f) {
    const double rfi = r.at(f, ap);
    const double denom = r.flow_total(f);
    const double share = denom > 0.0 ? c[f] * rfi / denom : 0.0;
    total += share - s.flows[f].costs[ap] * rfi;
  }
  return total;
}

}  // namespace offload
