// Acceptance suite: one line per criterion, nonzero exit when any fails.
//
// Criteria 7e (best-response monotonicity in rival prices) and 7f (monotone
// sandwich trajectories) are implemented exactly as claimed by the theory
// they operationalize, and they FAIL: both properties have analytic
// counterexamples at capacity-kink regime changes (a best response of the
// form (B - rivals' offload) e R^2/(R-1) decreases when rivals bid up). The
// failures are reported honestly rather than tuned away; see the unit test
// "best response can decrease in a rival's price at the capacity kink".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "offload/bounded.hpp"
#include "offload/oracle.hpp"
#include "offload/random_scenarios.hpp"
#include "offload/unbounded.hpp"
#include "offload/welfare.hpp"

using namespace offload;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<BoundedFlowSpec> fig1_flows() {
  return {{linear_utility(1.0), 0.1}, {linear_utility(2.0), 0.3}};
}

std::vector<BoundedFlowSpec> random_bounded_flows(std::mt19937_64& rng, int max_flows) {
  ScenarioSpec s = random_bounded_scenario(rng, max_flows, 2);
  std::vector<BoundedFlowSpec> flows;
  for (auto& fl : s.flows) flows.push_back({fl.utility, fl.costs.front()});
  return flows;
}

// ---------- criterion 1 ----------
void criterion_1() {
  const auto t0 = Clock::now();
  auto trace = run_dynamics(fig1_flows(), 2, 7.0, {0.01, 0.01});
  const double elapsed = seconds_since(t0);
  const auto& c = trace.final_prices();
  const auto& rho = trace.final_rho();
  const bool values_ok = trace.converged && std::abs(c[0] - 1.6) <= 1e-4 &&
                         std::abs(c[1] - 2.8) <= 1e-4 && std::abs(rho[0] - 4.0) <= 1e-4 &&
                         std::abs(rho[1] - 2.3333) <= 1e-4;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "C=(%.6f, %.6f) rho=(%.6f, %.6f) in %d iters, %.3fs", c[0], c[1], rho[0], rho[1],
                trace.iterations, elapsed);
  report("criterion 1: slack-capacity dynamics reach (1.6, 2.8)/(4, 2.3333)",
         values_ok && elapsed < 1.0, detail);
}

// ---------- criterion 2 ----------
void criterion_2() {
  const auto t0 = Clock::now();
  DynamicsOptions opts;
  opts.tol = 1e-10;
  const std::vector<PriceVector> starts = {{0.01, 0.01}, {5.0, 0.01}, {10.0, 10.0}};
  std::vector<PriceVector> limits;
  bool sums_ok = true, converged = true;
  for (const auto& c0 : starts) {
    auto trace = run_dynamics(fig1_flows(), 2, 1.0, c0, opts);
    converged = converged && trace.converged;
    sums_ok = sums_ok && std::abs(trace.final_rho()[0] + trace.final_rho()[1] - 1.0) <= 1e-8;
    limits.push_back(trace.final_prices());
  }
  double spread = 0.0;
  for (int f = 0; f < 2; ++f)
    for (size_t i = 1; i < limits.size(); ++i)
      spread = std::max(spread, std::abs(limits[i][f] - limits[0][f]));
  const double elapsed = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail, "limit spread %.2e, C*=(%.9f, %.9f), %.3fs total", spread,
                limits[0][0], limits[0][1], elapsed);
  report("criterion 2: binding-capacity limits agree across three starts",
         converged && sums_ok && spread <= 1e-6 && elapsed < 5.0, detail);
}

// ---------- criterion 3 ----------
void criterion_3() {
  auto solve_at = [](double e2) {
    const std::vector<BoundedFlowSpec> flows = {{linear_utility(2.0), 0.5},
                                                {linear_utility(1.0), e2}};
    return run_dynamics(flows, 2, 2.0, {0.01, 0.01});
  };
  auto mid = solve_at(0.4);
  const bool mid_ok = mid.converged && std::abs(mid.final_rho()[0] - 1.0) <= 1e-6 &&
                      std::abs(mid.final_prices()[0] - 2.0) <= 1e-6;
  auto exit = solve_at(0.8);
  const bool exit_ok = exit.converged && exit.final_rho()[1] == 0.0 &&
                       exit.final_prices()[1] == 0.0;
  auto tight = solve_at(0.2);
  const bool tight_ok =
      tight.converged && std::abs(tight.final_rho()[0] + tight.final_rho()[1] - 2.0) <= 1e-8;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "e2=0.4: (rho1, C1)=(%.8f, %.8f); e2=0.8: (rho2, C2)=(%g, %g); e2=0.2: sum rho=%.10f",
                mid.final_rho()[0], mid.final_prices()[0], exit.final_rho()[1],
                exit.final_prices()[1], tight.final_rho()[0] + tight.final_rho()[1]);
  report("criterion 3: cost-sweep point checks (interior, exit, binding)",
         mid_ok && exit_ok && tight_ok, detail);
}

// ---------- criterion 4 ----------
void criterion_4() {
  const std::vector<std::pair<std::string, UtilitySpec>> families = {
      {"logarithmic", log_utility(1.0)},
      {"linear", linear_utility(1.0)},
      {"power b=0.5", power_utility(1.0, 0.5)},
      {"power b=0.8", power_utility(1.0, 0.8)}};
  double worst = 0.0;
  std::string worst_at;
  bool all_ok = true;
  for (const auto& [label, u] : families) {
    for (int R = 3; R <= 10; ++R) {
      const std::vector<BoundedFlowSpec> flows = {{u, 0.1}, {u, 0.3}, {u, 0.2}};
      auto sol = solve_bounded_sne(flows, R, 20.0);
      if (!sol.converged) { all_ok = false; continue; }
      const double u_ne = system_utility_at_sne_bounded(flows, R, sol.equilibrium.rho);
      const double u_opt = social_optimum_bounded(flows, R, 20.0).utility;
      const double ratio = u_opt / u_ne;
      if (ratio > worst) {
        worst = ratio;
        worst_at = label + ", R=" + std::to_string(R);
      }
      all_ok = all_ok && ratio <= 1.18;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "max PoA %.4f at %s (bound 1.18)", worst, worst_at.c_str());
  report("criterion 4: three-flow efficiency bound over R in 3..10", all_ok, detail);
}

// ---------- criterion 5 ----------
void criterion_5() {
  std::mt19937_64 rng(2026);
  double worst_follower = 0.0, worst_leader = 0.0, slowest = 0.0;
  bool all_ok = true;

  for (int t = 0; t < 50; ++t) {
    const auto t0 = Clock::now();
    ScenarioSpec s = random_unbounded_scenario(rng, 3, 4);
    auto eq = solve_unbounded_sne(s);
    const double fg = certify_follower_ne(s, eq.offloads, eq.prices);
    const double lg = certify_leader_ne(s, eq.prices);
    worst_follower = std::max(worst_follower, fg);
    worst_leader = std::max(worst_leader, lg);
    slowest = std::max(slowest, seconds_since(t0));
    all_ok = all_ok && fg <= 1e-6 && lg <= 1e-6;
  }
  for (int t = 0; t < 50; ++t) {
    const auto t0 = Clock::now();
    ScenarioSpec s = random_bounded_scenario(rng, 5, 10);
    const auto flows = to_bounded_flows(s);
    auto sol = solve_bounded_sne(flows, s.num_aps, *s.capacity);
    if (!sol.converged) { all_ok = false; continue; }
    OffloadMatrix profile(s.num_flows(), s.num_aps);
    for (int f = 0; f < s.num_flows(); ++f)
      for (int i = 0; i < s.num_aps; ++i) profile.at(f, i) = sol.equilibrium.rho[f];
    const double fg = certify_follower_ne(s, profile, sol.prices);
    const double lg = certify_leader_ne(s, sol.prices);
    worst_follower = std::max(worst_follower, fg);
    worst_leader = std::max(worst_leader, lg);
    slowest = std::max(slowest, seconds_since(t0));
    all_ok = all_ok && fg <= 1e-6 && lg <= 1e-6;
  }
  all_ok = all_ok && slowest < 2.0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "100 scenarios; worst gains: follower %.2e, leader %.2e; slowest %.3fs",
                worst_follower, worst_leader, slowest);
  report("criterion 5: deviation certificates on 50+50 random scenarios", all_ok, detail);
}

// ---------- criterion 6 ----------
void criterion_6() {
  std::mt19937_64 rng(31337);
  DynamicsOptions opts;
  opts.tol = 1e-10;
  int tested = 0, skipped = 0;
  double worst_spread = 0.0;
  bool all_ok = true;
  while (tested < 20 && skipped < 400) {
    const int F = 1 + static_cast<int>(rng() % 5);
    auto flows = random_bounded_flows(rng, F);
    const int R = 2 + static_cast<int>(rng() % 9);
    const double B = std::uniform_real_distribution<double>(0.5, 20.0)(rng);
    auto ref = run_dynamics(flows, R, B, PriceVector(flows.size(), 0.01), opts);
    if (!ref.converged) { ++skipped; continue; }
    const auto eq = solve_symmetric_followers(flows, ref.final_prices(), R, B);
    double rho_total = 0.0;
    for (double r : eq.rho) rho_total += r;
    // Exclude the knife-edge where the capacity is exactly met with zero
    // shadow price: there a continuum of equilibria exists and limits are
    // legitimately start-dependent.
    if (eq.lambda < 1e-7 && rho_total > B * (1.0 - 1e-7)) { ++skipped; continue; }
    ++tested;
    for (int trial = 0; trial < 5; ++trial) {
      PriceVector start(flows.size());
      for (auto& c : start) c = std::uniform_real_distribution<double>(0.001, 10.0)(rng);
      auto trace = run_dynamics(flows, R, B, start, opts);
      if (!trace.converged) { all_ok = false; continue; }
      for (size_t f = 0; f < flows.size(); ++f)
        worst_spread = std::max(worst_spread,
                                std::abs(trace.final_prices()[f] - ref.final_prices()[f]));
    }
  }
  all_ok = all_ok && tested == 20 && worst_spread <= 1e-6;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%d scenarios x 5 starts (skipped %d boundary/non-unique draws); worst spread %.2e",
                tested, skipped, worst_spread);
  report("criterion 6: multistart limits agree on 20 bounded scenarios", all_ok, detail);
}

// ---------- criterion 7 ----------
bool sub_threshold_structure() {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 50; ++t) {
    ScenarioSpec s = random_unbounded_scenario(rng, 3, 8);
    auto sets = select_ap_sets(s);
    for (int f = 0; f < s.num_flows(); ++f) {
      const auto& costs = s.flows[f].costs;
      double sum = 0.0, max_in = 0.0;
      for (int i : sets[f]) { sum += costs[i]; max_in = std::max(max_in, costs[i]); }
      const double threshold = sum / (static_cast<double>(sets[f].size()) - 1.0);
      if (!(max_in < threshold)) return false;
      for (int i = 0; i < s.num_aps; ++i)
        if (std::find(sets[f].begin(), sets[f].end(), i) == sets[f].end() &&
            costs[i] < threshold - 1e-12)
          return false;
    }
  }
  return true;
}

bool sub_kkt_residuals() {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> price(0.0, 3.0);
  for (int t = 0; t < 50; ++t) {
    const int F = 1 + static_cast<int>(rng() % 5);
    auto flows = random_bounded_flows(rng, F);
    const int R = 2 + static_cast<int>(rng() % 9);
    const double B = std::uniform_real_distribution<double>(0.5, 20.0)(rng);
    PriceVector prices(flows.size());
    for (auto& c : prices) c = price(rng);
    auto eq = solve_symmetric_followers(flows, prices, R, B);
    double rho_total = 0.0;
    for (size_t f = 0; f < flows.size(); ++f) {
      rho_total += eq.rho[f];
      if (eq.rho[f] > 0.0 &&
          std::abs(prices[f] * (R - 1.0) / (R * R * eq.rho[f]) - flows[f].cost - eq.lambda +
                   eq.nu[f]) > 1e-8)
        return false;
      if (std::abs(eq.nu[f] * eq.rho[f]) > 1e-8) return false;
    }
    if (std::abs(eq.lambda * (rho_total - B)) > 1e-8 || rho_total > B + 1e-8) return false;
  }
  return true;
}

bool sub_psi_lambda_shape() {
  const auto flows = fig1_flows();
  const PriceVector rivals = {0.0, 0.889495667257};
  std::vector<double> grid, psi, lam;
  for (int i = 0; i < 50; ++i) {
    const double c = 1e-3 * std::pow(1e6, i / 49.0);
    grid.push_back(c);
    psi.push_back(psi_map(flows, 2, 1.0, 0, c, rivals));
    lam.push_back(lambda_map(flows, 2, 1.0, 0, c, rivals));
  }
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(psi[i + 1] > psi[i]) || lam[i + 1] < lam[i] - 1e-12) return false;
  for (size_t i = 1; i + 1 < grid.size(); ++i) {
    const double left = (psi[i] - psi[i - 1]) / (grid[i] - grid[i - 1]);
    const double right = (psi[i + 1] - psi[i]) / (grid[i + 1] - grid[i]);
    if ((right - left) / (grid[i + 1] - grid[i - 1]) > 1e-9) return false;
  }
  return true;
}

bool sub_best_response_bound() {
  std::mt19937_64 rng(74);
  for (int t = 0; t < 20; ++t) {
    auto flows = random_bounded_flows(rng, 3);
    const int R = 2 + static_cast<int>(rng() % 7);
    const double B = std::uniform_real_distribution<double>(0.5, 10.0)(rng);
    PriceVector rivals(flows.size());
    for (auto& c : rivals) c = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    for (size_t f = 0; f < flows.size(); ++f) {
      const double br = leader_best_response(flows, R, B, static_cast<int>(f), rivals);
      if (br < 0.0 || br > flows[f].utility.value(R * std::log1p(B)) + 1e-9) return false;
    }
  }
  return true;
}

bool sub_best_response_monotone(std::string& detail) {
  // As claimed: raising one rival price never decreases a flow's best
  // response. 20 random two-flow instances, one raised rival each.
  std::mt19937_64 rng(75);
  int violations = 0;
  double worst_drop = 0.0;
  for (int t = 0; t < 20; ++t) {
    auto flows = random_bounded_flows(rng, 2);
    while (flows.size() < 2) flows = random_bounded_flows(rng, 2);
    const int R = 2 + static_cast<int>(rng() % 9);
    const double B = std::uniform_real_distribution<double>(0.5, 20.0)(rng);
    const double eta = flows[1].utility.value(R * std::log1p(B));
    const double base = std::uniform_real_distribution<double>(0.0, eta)(rng);
    PriceVector rivals = {0.0, base};
    const double br_before = leader_best_response(flows, R, B, 0, rivals);
    rivals[1] = 1.5 * base + 0.05;
    const double br_after = leader_best_response(flows, R, B, 0, rivals);
    if (br_after < br_before - 1e-9) {
      ++violations;
      worst_drop = std::max(worst_drop, br_before - br_after);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/20 instances violate monotonicity (worst drop %.4f)",
                violations, worst_drop);
  detail = buf;
  return violations == 0;
}

bool sub_sandwich(std::string& detail) {
  // As claimed: canonical lower/upper starts give monotone trajectories with
  // a common limit, and interior starts stay between them stepwise.
  const auto flows = fig1_flows();
  DynamicsOptions opts;
  opts.tol = 1e-10;
  PriceVector eta;
  for (const auto& fl : flows) eta.push_back(fl.utility.value(2.0 * std::log1p(1.0)));
  auto lower = run_dynamics(flows, 2, 1.0, {1e-6, 1e-6}, opts);
  auto upper = run_dynamics(flows, 2, 1.0, eta, opts);
  auto mid = run_dynamics(flows, 2, 1.0, {0.7, 1.3}, opts);

  double limit_gap = 0.0;
  for (int f = 0; f < 2; ++f)
    limit_gap = std::max(limit_gap,
                         std::abs(lower.final_prices()[f] - upper.final_prices()[f]));
  const bool limits_ok = lower.converged && upper.converged && limit_gap <= 1e-6;

  bool monotone_ok = true;
  for (size_t i = 0; i + 1 < lower.iterates.size(); ++i)
    for (int f = 0; f < 2; ++f)
      if (lower.iterates[i + 1].prices[f] < lower.iterates[i].prices[f] - 1e-9)
        monotone_ok = false;
  for (size_t i = 0; i + 1 < upper.iterates.size(); ++i)
    for (int f = 0; f < 2; ++f)
      if (upper.iterates[i + 1].prices[f] > upper.iterates[i].prices[f] + 1e-9)
        monotone_ok = false;

  bool between_ok = true;
  const size_t n = std::min({lower.iterates.size(), upper.iterates.size(), mid.iterates.size()});
  for (size_t i = 0; i < n; ++i)
    for (int f = 0; f < 2; ++f) {
      const double lo = lower.iterates[i].prices[f], hi = upper.iterates[i].prices[f];
      const double c = mid.iterates[i].prices[f];
      if (c < lo - 1e-9 || c > hi + 1e-9) between_ok = false;
    }

  char buf[200];
  std::snprintf(buf, sizeof buf, "limits agree: %s (gap %.1e); monotone: %s; stepwise between: %s",
                limits_ok ? "yes" : "no", limit_gap, monotone_ok ? "yes" : "no",
                between_ok ? "yes" : "no");
  detail = buf;
  return limits_ok && monotone_ok && between_ok;
}

bool sub_cross_regime() {
  const std::vector<std::pair<UtilitySpec, double>> cases = {{linear_utility(1.0), 0.1},
                                                             {log_utility(3.0), 0.1},
                                                             {power_utility(1.0, 0.5), 0.2}};
  for (const auto& [u, cost] : cases) {
    for (int R : {2, 5}) {
      ScenarioSpec s;
      s.num_aps = R;
      s.flows = {{u, std::vector<double>(R, cost)}};
      auto unb = solve_unbounded_sne(s);
      const double target = contractor_interior_rho(u, cost, R);
      auto sol = solve_bounded_sne({{u, cost}}, R, 4.0 * std::max(target, 1.0));
      if (!sol.converged) return false;
      if (std::abs(sol.prices[0] - unb.prices[0]) > 1e-6 * std::max(1.0, unb.prices[0]))
        return false;
      if (std::abs(sol.equilibrium.rho[0] - unb.offloads.at(0, 0)) > 1e-6) return false;
    }
  }
  return true;
}

void criterion_7() {
  struct Sub { std::string name; bool pass; std::string detail; };
  std::vector<Sub> subs;
  subs.push_back({"AP-set threshold structure", sub_threshold_structure(), ""});
  subs.push_back({"followers' KKT residuals <= 1e-8", sub_kkt_residuals(), ""});
  subs.push_back({"Psi increasing+concave, Lambda non-decreasing", sub_psi_lambda_shape(), ""});
  subs.push_back({"best-response bound", sub_best_response_bound(), ""});
  {
    std::string detail;
    const bool pass = sub_best_response_monotone(detail);
    subs.push_back({"best-response monotone in rival prices", pass, detail});
  }
  {
    std::string detail;
    const bool pass = sub_sandwich(detail);
    subs.push_back({"monotone sandwich trajectories", pass, detail});
  }
  subs.push_back({"cross-regime slack consistency", sub_cross_regime(), ""});

  bool all = true;
  for (const auto& sub : subs) {
    std::printf("        [%s] 7: %s%s%s\n", sub.pass ? "pass" : "FAIL", sub.name.c_str(),
                sub.detail.empty() ? "" : " — ", sub.detail.c_str());
    all = all && sub.pass;
  }
  report("criterion 7: structural property suite", all,
         all ? "" : "known analytic counterexamples at capacity-kink regime changes; "
                    "see tests/test_bounded.cpp and the dynamics documentation");
}

// ---------- criterion 8 ----------

// Two-stage 500x500 grid maximizer over {x, y >= 0, x + y <= cap}: a global
// pass, then a zoomed pass around the coarse argmax so spiky optima near the
// axes are resolved.
double grid_max_simplex(const std::function<double(double, double)>& value, double cap, int N) {
  double best = -1e300, bx = 0.0, by = 0.0;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N - i; ++j) {
      const double v = value(cap * i / N, cap * j / N);
      if (v > best) { best = v; bx = cap * i / N; by = cap * j / N; }
    }
  const double w = 2.0 * cap / N;
  const double x0 = std::max(bx - w, 0.0), y0 = std::max(by - w, 0.0);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      const double x = x0 + 2.0 * w * i / N, y = y0 + 2.0 * w * j / N;
      if (x + y > cap) continue;
      best = std::max(best, value(x, y));
    }
  return best;
}

void criterion_8() {
  std::mt19937_64 rng(81);
  bool program_ok = true, social_ok = true;
  double worst_program = 0.0, worst_social = 0.0;

  auto objective = [](const std::vector<BoundedFlowSpec>& flows, const PriceVector& prices, int R,
                      const std::vector<double>& rho) {
    double total = 0.0;
    for (size_t f = 0; f < flows.size(); ++f)
      if (prices[f] > 0.0)
        total += prices[f] * (R - 1.0) / (R * R) * std::log(rho[f]) - flows[f].cost * rho[f];
    return total;
  };

  for (int t = 0; t < 6; ++t) {
    auto flows = random_bounded_flows(rng, 2);
    while (flows.size() < 2) flows = random_bounded_flows(rng, 2);
    const int R = 2 + static_cast<int>(rng() % 5);
    const double B = std::uniform_real_distribution<double>(0.5, 10.0)(rng);
    PriceVector prices = {std::uniform_real_distribution<double>(0.2, 3.0)(rng),
                          std::uniform_real_distribution<double>(0.2, 3.0)(rng)};
    auto eq = solve_symmetric_followers(flows, prices, R, B);
    const double solver_value = objective(flows, prices, R, eq.rho);
    double grid_best = -1e300;
    const int N = 500;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N - i; ++j)
        grid_best = std::max(grid_best, objective(flows, prices, R, {B * i / N, B * j / N}));
    worst_program = std::max(worst_program, grid_best - solver_value);
    program_ok = program_ok && solver_value >= grid_best - 1e-6;
  }

  for (int t = 0; t < 6; ++t) {
    auto flows = random_bounded_flows(rng, 2);
    while (flows.size() < 2) flows = random_bounded_flows(rng, 2);
    const int R = 2 + static_cast<int>(rng() % 5);
    const double B = std::uniform_real_distribution<double>(1.0, 10.0)(rng);
    auto opt = social_optimum_bounded(flows, R, B);
    const double grid_best = grid_max_simplex(
        [&](double a, double b) { return system_utility_at_sne_bounded(flows, R, {a, b}); }, B,
        500);
    worst_social = std::max(worst_social, std::abs(opt.utility - grid_best));
    social_ok = social_ok && std::abs(opt.utility - grid_best) <= 1e-4 &&
                opt.utility >= grid_best - 1e-9;
  }

  // Unbounded social optima against 2-D grids (R = 2 draws).
  for (int t = 0; t < 4; ++t) {
    ScenarioSpec s = random_unbounded_scenario(rng, 1, 2);
    s.num_aps = 2;
    for (auto& fl : s.flows) fl.costs.resize(2, fl.costs.front());
    auto opt = social_optimum_unbounded(s);
    const double reach = 2.0 * std::max({opt.offloads.at(0, 0), opt.offloads.at(0, 1), 1.0});
    const double grid_best = grid_max_simplex(
        [&](double r1, double r2) {
          return s.flows[0].utility.value(std::log1p(r1) + std::log1p(r2)) -
                 s.flows[0].costs[0] * r1 - s.flows[0].costs[1] * r2;
        },
        2.0 * reach, 700);
    worst_social = std::max(worst_social, std::abs(opt.utility - grid_best));
    social_ok = social_ok && std::abs(opt.utility - grid_best) <= 1e-4 &&
                opt.utility >= grid_best - 1e-9;
  }

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "program gap worst %.2e (<=1e-6); social optimum vs grids worst %.2e (<=1e-4)",
                worst_program, worst_social);
  report("criterion 8: solvers match their grid oracles", program_ok && social_ok, detail);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d criterion(s) failed; total %.2fs\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
