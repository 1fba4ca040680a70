#include <cmath>
#include <functional>
#include <filesystem>
#include <future>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "offload/commands.hpp"
#include "offload/oracle.hpp"
#include "offload/random_scenarios.hpp"
#include "offload/unbounded.hpp"
#include "offload/welfare.hpp"

namespace offload {

using nlohmann::ordered_json;

namespace {

ScenarioSpec bounded_scenario(int num_aps, double capacity,
                              std::vector<std::pair<UtilitySpec, double>> flows) {
  ScenarioSpec s;
  s.num_aps = num_aps;
  s.capacity = capacity;
  for (auto& [u, e] : flows) s.flows.push_back({u, std::vector<double>(num_aps, e)});
  return s;
}

const ScenarioSpec& require_scenario(const ExperimentConfig& cfg) {
  if (!cfg.scenario) throw ConfigError("scenario: missing");
  return *cfg.scenario;
}

PriceVector start_prices(const ExperimentConfig& cfg, int num_flows) {
  if (cfg.initial_prices.empty()) return PriceVector(num_flows, 0.01);
  if (static_cast<int>(cfg.initial_prices.size()) != num_flows)
    throw ConfigError("solver.initial_prices: expected one entry per flow");
  return cfg.initial_prices;
}

struct BoundedPoint {
  PriceVector prices;
  SymmetricEquilibrium eq;
  double u_ne = 0.0, u_opt = 0.0;
};

BoundedPoint solve_bounded_point(const ScenarioSpec& s, const DynamicsOptions& opts) {
  const auto flows = to_bounded_flows(s);
  DynamicsTrace trace = run_dynamics(flows, s.num_aps, *s.capacity, PriceVector(flows.size(), 0.01), opts);
  if (!trace.converged) throw std::runtime_error("sweep point did not converge");
  BoundedPoint pt;
  pt.prices = trace.final_prices();
  pt.eq = solve_symmetric_followers(flows, pt.prices, s.num_aps, *s.capacity);
  pt.u_ne = system_utility_at_sne_bounded(flows, s.num_aps, pt.eq.rho);
  pt.u_opt = social_optimum_bounded(flows, s.num_aps, *s.capacity).utility;
  return pt;
}

struct UnboundedPoint {
  UnboundedEquilibrium eq;
  double u_ne = 0.0, u_opt = 0.0;
};

UnboundedPoint solve_unbounded_point(const ScenarioSpec& s) {
  UnboundedPoint pt;
  pt.eq = solve_unbounded_sne(s);
  pt.u_ne = system_utility_at_sne_unbounded(s, pt.eq);
  pt.u_opt = social_optimum_unbounded(s).utility;
  return pt;
}

std::string poa_text(double u_ne, double u_opt) {
  return u_ne > 0.0 ? fmt_sig(u_opt / u_ne) : "nan";
}

// ---- preset scenario tables ----

ExperimentConfig fig1_config(double capacity) {
  ExperimentConfig cfg;
  cfg.scenario = bounded_scenario(2, capacity, {{linear_utility(1.0), 0.1}, {linear_utility(2.0), 0.3}});
  cfg.initial_prices = {0.01, 0.01};
  return cfg;
}

std::vector<double> arange(double first, double last, double step) {
  std::vector<double> v;
  for (int i = 0;; ++i) {
    const double x = first + step * i;
    if (x > last + 0.5 * step) break;
    v.push_back(std::round(x * 1e9) / 1e9);  // kill accumulation drift in labels
  }
  return v;
}

// Two-flow bounded sweeps share a row layout.
std::string bounded_axis_csv(const std::string& label, const std::vector<double>& values,
                             const DynamicsOptions& opts,
                             const std::function<ScenarioSpec(double)>& make,
                             bool with_sum_column) {
  std::vector<std::future<BoundedPoint>> futures;
  futures.reserve(values.size());
  for (double v : values)
    futures.push_back(std::async(std::launch::async,
                                 [&, v] { return solve_bounded_point(make(v), opts); }));
  std::ostringstream out;
  out << label << ",C_1,C_2,rho_1,rho_2" << (with_sum_column ? ",sum_rho" : "")
      << ",lambda,u_ne,u_opt,poa\n";
  for (size_t i = 0; i < values.size(); ++i) {
    const BoundedPoint pt = futures[i].get();
    out << fmt_sig(values[i]) << "," << fmt_sig(pt.prices[0]) << "," << fmt_sig(pt.prices[1]) << ","
        << fmt_sig(pt.eq.rho[0]) << "," << fmt_sig(pt.eq.rho[1]);
    if (with_sum_column) out << "," << fmt_sig(pt.eq.rho[0] + pt.eq.rho[1]);
    out << "," << fmt_sig(pt.eq.lambda) << "," << fmt_sig(pt.u_ne) << "," << fmt_sig(pt.u_opt)
        << "," << poa_text(pt.u_ne, pt.u_opt) << "\n";
  }
  return out.str();
}

std::string fig5_csv(const DynamicsOptions& opts) {
  struct Row { std::string family; double exponent; int R; };
  const std::vector<std::pair<std::string, double>> families = {
      {"logarithmic", 0.0}, {"linear", 0.0}, {"power", 0.5}, {"power", 0.8}};
  std::vector<Row> rows;
  for (const auto& [family, b] : families)
    for (int R = 2; R <= 10; ++R) rows.push_back({family, b, R});

  auto solve_row = [&](const Row& row) {
    UtilitySpec u = row.family == "linear"     ? linear_utility(1.0)
                    : row.family == "power"    ? power_utility(1.0, row.exponent)
                                               : log_utility(1.0);
    ScenarioSpec s = bounded_scenario(row.R, 20.0, {{u, 0.1}, {u, 0.3}, {u, 0.2}});
    return solve_bounded_point(s, opts);
  };
  std::vector<std::future<BoundedPoint>> futures;
  for (const auto& row : rows)
    futures.push_back(std::async(std::launch::async, [&, row] { return solve_row(row); }));

  std::ostringstream out;
  out << "family,exponent,R,u_ne,u_opt,poa\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const BoundedPoint pt = futures[i].get();
    out << rows[i].family << "," << fmt_sig(rows[i].exponent) << "," << rows[i].R << ","
        << fmt_sig(pt.u_ne) << "," << fmt_sig(pt.u_opt) << "," << poa_text(pt.u_ne, pt.u_opt) << "\n";
  }
  return out.str();
}

ScenarioSpec fig6_scenario(bool heterogeneous, int R) {
  ScenarioSpec s;
  s.num_aps = R;
  FlowSpec f1{linear_utility(2.0), {}}, f2{linear_utility(3.0), {}};
  for (int j = 0; j < R; ++j) {
    f1.costs.push_back(heterogeneous ? 0.1 + 0.1 * j : 0.1);
    f2.costs.push_back(heterogeneous ? 0.2 + 0.1 * j : 0.2);
  }
  s.flows = {f1, f2};
  return s;
}

std::string fig6_csv() {
  std::ostringstream out;
  out << "series,R,u_ne,u_opt,poa\n";
  for (const bool het : {false, true}) {
    std::vector<std::future<UnboundedPoint>> futures;
    for (int R = 2; R <= 10; ++R)
      futures.push_back(std::async(std::launch::async,
                                   [het, R] { return solve_unbounded_point(fig6_scenario(het, R)); }));
    for (int R = 2; R <= 10; ++R) {
      const UnboundedPoint pt = futures[R - 2].get();
      out << (het ? "heterogeneous" : "homogeneous") << "," << R << "," << fmt_sig(pt.u_ne) << ","
          << fmt_sig(pt.u_opt) << "," << poa_text(pt.u_ne, pt.u_opt) << "\n";
    }
  }
  return out.str();
}

ScenarioSpec fig78_scenario(bool heterogeneous, int F) {
  ScenarioSpec s;
  s.num_aps = 2;
  for (int f = 0; f < F; ++f) {
    FlowSpec flow;
    if (heterogeneous) {
      flow.utility = linear_utility(2.0 + f);
      flow.costs = {0.1 + 0.1 * f, 0.2 + 0.1 * f};
    } else {
      flow.utility = linear_utility(f == 0 ? 2.0 : 3.0);
      flow.costs = f == 0 ? std::vector<double>{0.1, 0.2} : std::vector<double>{0.3, 0.4};
    }
    s.flows.push_back(std::move(flow));
  }
  return s;
}

std::string fig78_csv(bool heterogeneous) {
  std::vector<std::future<UnboundedPoint>> futures;
  for (int F = 2; F <= 10; ++F)
    futures.push_back(std::async(std::launch::async, [heterogeneous, F] {
      return solve_unbounded_point(fig78_scenario(heterogeneous, F));
    }));
  std::ostringstream out;
  out << "F,u_ne,u_opt,poa\n";
  for (int F = 2; F <= 10; ++F) {
    const UnboundedPoint pt = futures[F - 2].get();
    out << F << "," << fmt_sig(pt.u_ne) << "," << fmt_sig(pt.u_opt) << ","
        << poa_text(pt.u_ne, pt.u_opt) << "\n";
  }
  return out.str();
}

ScenarioSpec apply_axis(const ScenarioSpec& base, const SweepAxis& axis, double value) {
  ScenarioSpec s = base;
  switch (axis.kind) {
    case SweepAxis::Kind::Cost: {
      if (axis.flow >= s.num_flows()) throw ConfigError("sweep.axis.flow: out of range");
      auto& costs = s.flows[axis.flow].costs;
      if (axis.ap < 0)
        costs.assign(costs.size(), value);
      else if (axis.ap < s.num_aps)
        costs[axis.ap] = value;
      else
        throw ConfigError("sweep.axis.ap: out of range");
      break;
    }
    case SweepAxis::Kind::Weight:
      if (axis.flow >= s.num_flows()) throw ConfigError("sweep.axis.flow: out of range");
      s.flows[axis.flow].utility.weight = value;
      break;
    case SweepAxis::Kind::Exponent:
      if (axis.flow >= s.num_flows()) throw ConfigError("sweep.axis.flow: out of range");
      s.flows[axis.flow].utility.exponent = value;
      break;
    case SweepAxis::Kind::NumAps: {
      const int R = static_cast<int>(value);
      if (R < 2) throw ConfigError("sweep.axis.values: num_aps must be >= 2");
      s.num_aps = R;
      for (auto& flow : s.flows) {
        const double last = flow.costs.back();
        flow.costs.resize(R, last);
      }
      break;
    }
    case SweepAxis::Kind::NumFlows: {
      const int F = static_cast<int>(value);
      if (F < 1) throw ConfigError("sweep.axis.values: num_flows must be >= 1");
      while (s.num_flows() < F) s.flows.push_back(s.flows.back());
      s.flows.resize(F);
      break;
    }
  }
  s.validate();
  return s;
}

std::string custom_axis_csv(const ScenarioSpec& base, const SweepAxis& axis,
                            const DynamicsOptions& opts) {
  std::vector<std::future<std::pair<double, double>>> futures;  // (u_ne, u_opt)
  for (double v : axis.values) {
    const ScenarioSpec s = apply_axis(base, axis, v);
    futures.push_back(std::async(std::launch::async, [s, opts] {
      if (s.bounded()) {
        const BoundedPoint pt = solve_bounded_point(s, opts);
        return std::make_pair(pt.u_ne, pt.u_opt);
      }
      const UnboundedPoint pt = solve_unbounded_point(s);
      return std::make_pair(pt.u_ne, pt.u_opt);
    }));
  }
  std::ostringstream out;
  out << "value,u_ne,u_opt,poa\n";
  for (size_t i = 0; i < axis.values.size(); ++i) {
    const auto [u_ne, u_opt] = futures[i].get();
    out << fmt_sig(axis.values[i]) << "," << fmt_sig(u_ne) << "," << fmt_sig(u_opt) << ","
        << poa_text(u_ne, u_opt) << "\n";
  }
  return out.str();
}

// ---- report helpers ----

ordered_json solver_json(const DynamicsOptions& opts, int iterations, bool converged) {
  return ordered_json{
      {"schedule", opts.schedule == DynamicsOptions::Schedule::Jacobi ? "jacobi" : "roundrobin"},
      {"tol", opts.tol},
      {"max_iters", opts.max_iters},
      {"iterations", iterations},
      {"converged", converged}};
}

ordered_json bounded_report(const ScenarioSpec& s, const std::vector<BoundedFlowSpec>& flows,
                            const PriceVector& prices, const SymmetricEquilibrium& eq) {
  const double R = s.num_aps;
  const double B = *s.capacity;
  double b1 = 0.0, b3 = 0.0, rho_total = 0.0;
  for (size_t f = 0; f < flows.size(); ++f) {
    rho_total += eq.rho[f];
    if (eq.rho[f] > 0.0)
      b1 = std::max(b1, std::abs(prices[f] * (R - 1.0) / (R * R * eq.rho[f]) - flows[f].cost -
                                 eq.lambda + eq.nu[f]));
    b3 = std::max(b3, std::abs(eq.nu[f] * eq.rho[f]));
  }
  const double b2 = std::abs(eq.lambda * (rho_total - B));
  return ordered_json{{"regime", "bounded"},
                      {"prices", prices},
                      {"rho", eq.rho},
                      {"lambda", eq.lambda},
                      {"nu", eq.nu},
                      {"kkt_residuals", ordered_json{{"b1", b1}, {"b2", b2}, {"b3", b3}}},
                      {"u_ne", system_utility_at_sne_bounded(flows, s.num_aps, eq.rho)}};
}

ordered_json unbounded_report(const ScenarioSpec& s, const UnboundedEquilibrium& eq) {
  ordered_json ap_sets = ordered_json::array();
  for (const auto& set : eq.ap_sets) {
    ordered_json one = ordered_json::array();
    for (int i : set) one.push_back(i + 1);
    ap_sets.push_back(one);
  }
  ordered_json offloads = ordered_json::array();
  for (int f = 0; f < s.num_flows(); ++f) {
    ordered_json row = ordered_json::array();
    for (int i = 0; i < s.num_aps; ++i) row.push_back(eq.offloads.at(f, i));
    offloads.push_back(row);
  }
  return ordered_json{{"regime", "unbounded"},
                      {"prices", eq.prices},
                      {"offloads", offloads},
                      {"ap_sets", ap_sets},
                      {"coefficients", eq.coefficients},
                      {"u_ne", system_utility_at_sne_unbounded(s, eq)}};
}

std::string out_path(const std::string& out_dir, const std::string& name) {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / name).string();
}

}  // namespace

ExperimentConfig preset_config(const std::string& name) {
  if (name == "fig1a") return fig1_config(7.0);
  if (name == "fig1b") return fig1_config(1.0);
  ExperimentConfig cfg;
  if (name == "fig2") {
    cfg.scenario = bounded_scenario(2, 2.0, {{linear_utility(2.0), 0.5}, {linear_utility(1.0), 0.3}});
    SweepAxis axis{SweepAxis::Kind::Cost, 1, -1, arange(0.10, 1.00, 0.05)};
    cfg.sweep = SweepSpec{"fig2", axis};
  } else if (name == "fig3") {
    cfg.scenario = bounded_scenario(2, 1.0, {{linear_utility(1.0), 0.1}, {linear_utility(1.0), 0.3}});
    SweepAxis axis{SweepAxis::Kind::Weight, 1, -1, arange(0.2, 3.0, 0.1)};
    cfg.sweep = SweepSpec{"fig3", axis};
  } else if (name == "fig4") {
    cfg.scenario = bounded_scenario(2, 7.0, {{linear_utility(2.0), 0.1}, {linear_utility(3.0), 0.2}});
    SweepAxis axis{SweepAxis::Kind::NumAps, 0, -1, arange(2, 10, 1)};
    cfg.sweep = SweepSpec{"fig4", axis};
  } else if (name == "fig5" || name == "fig6" || name == "fig7" || name == "fig8") {
    cfg.sweep = SweepSpec{name, std::nullopt};
  } else {
    throw ConfigError("preset: unknown name \"" + name + "\" (fig1a, fig1b, fig2..fig8)");
  }
  return cfg;
}

std::string sweep_csv(const ExperimentConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep: config has no sweep section");
  const SweepSpec& spec = *cfg.sweep;
  if (spec.preset == "fig2")
    return bounded_axis_csv("e2", spec.axis->values, cfg.solver,
                            [&](double v) { return apply_axis(require_scenario(cfg), *spec.axis, v); },
                            /*with_sum_column=*/true);
  if (spec.preset == "fig3")
    return bounded_axis_csv("w2", spec.axis->values, cfg.solver,
                            [&](double v) { return apply_axis(require_scenario(cfg), *spec.axis, v); },
                            /*with_sum_column=*/false);
  if (spec.preset == "fig4")
    return bounded_axis_csv("R", spec.axis->values, cfg.solver,
                            [&](double v) { return apply_axis(require_scenario(cfg), *spec.axis, v); },
                            /*with_sum_column=*/false);
  if (spec.preset == "fig5") return fig5_csv(cfg.solver);
  if (spec.preset == "fig6") return fig6_csv();
  if (spec.preset == "fig7") return fig78_csv(false);
  if (spec.preset == "fig8") return fig78_csv(true);
  if (!spec.preset.empty())
    throw ConfigError("sweep.preset: \"" + spec.preset + "\" is not a sweep preset");
  return custom_axis_csv(require_scenario(cfg), *spec.axis, cfg.solver);
}

int cmd_solve(const ExperimentConfig& cfg, const std::string& out_dir) {
  const ScenarioSpec& s = require_scenario(cfg);
  ordered_json report{{"schema_version", 1}};
  OffloadMatrix profile(s.num_flows(), s.num_aps);
  PriceVector prices;

  if (s.bounded()) {
    const auto flows = to_bounded_flows(s);
    DynamicsTrace trace =
        run_dynamics(flows, s.num_aps, *s.capacity, start_prices(cfg, s.num_flows()), cfg.solver);
    prices = trace.final_prices();
    const auto eq = solve_symmetric_followers(flows, prices, s.num_aps, *s.capacity);
    report.update(bounded_report(s, flows, prices, eq));
    report["solver"] = solver_json(cfg.solver, trace.iterations, trace.converged);
    for (int f = 0; f < s.num_flows(); ++f)
      for (int i = 0; i < s.num_aps; ++i) profile.at(f, i) = eq.rho[f];
    if (!trace.converged) {
      write_text_file(out_path(out_dir, "report.json"), report.dump(2) + "\n");
      return 3;
    }
  } else {
    const UnboundedEquilibrium eq = solve_unbounded_sne(s);
    prices = eq.prices;
    profile = eq.offloads;
    report.update(unbounded_report(s, eq));
    report["solver"] = solver_json(cfg.solver, 0, true);
  }

  if (cfg.certify) {
    report["certificate"] =
        ordered_json{{"follower_max_gain", certify_follower_ne(s, profile, prices, *cfg.certify)},
                     {"leader_max_gain", certify_leader_ne(s, prices, *cfg.certify)},
                     {"grid_points", cfg.certify->grid_points},
                     {"radius", cfg.certify->radius}};
  }

  write_text_file(out_path(out_dir, "report.json"), report.dump(2) + "\n");
  write_text_file(out_path(out_dir, "solution.csv"), solution_csv(s, prices, profile));
  return 0;
}

int cmd_dynamics(const ExperimentConfig& cfg, const std::string& out_dir) {
  const ScenarioSpec& s = require_scenario(cfg);
  if (!s.bounded())
    throw ConfigError("dynamics: requires a bounded scenario (the unbounded equilibrium is closed-form)");
  const auto flows = to_bounded_flows(s);
  DynamicsTrace trace =
      run_dynamics(flows, s.num_aps, *s.capacity, start_prices(cfg, s.num_flows()), cfg.solver);
  write_text_file(out_path(out_dir, "trace.csv"), trace_csv(trace));
  return trace.converged ? 0 : 3;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
  const std::string name = cfg.sweep && !cfg.sweep->preset.empty() ? cfg.sweep->preset : "custom";
  std::string csv;
  try {
    csv = sweep_csv(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::runtime_error&) {
    return 3;
  }
  write_text_file(out_path(out_dir, "sweep_" + name + ".csv"), csv);
  return 0;
}

int cmd_certify(const ExperimentConfig& cfg, const std::string& out_dir) {
  const CertifyOptions opts = cfg.certify.value_or(CertifyOptions{});
  ordered_json report{{"schema_version", 1},
                      {"grid_points", opts.grid_points},
                      {"radius", opts.radius}};

  auto certify_one = [&](const ScenarioSpec& s) {
    OffloadMatrix profile(s.num_flows(), s.num_aps);
    PriceVector prices;
    if (s.bounded()) {
      const auto flows = to_bounded_flows(s);
      const BoundedSolution sol = solve_bounded_sne(flows, s.num_aps, *s.capacity, cfg.solver);
      if (!sol.converged) throw std::runtime_error("certify: dynamics did not converge");
      prices = sol.prices;
      for (int f = 0; f < s.num_flows(); ++f)
        for (int i = 0; i < s.num_aps; ++i) profile.at(f, i) = sol.equilibrium.rho[f];
    } else {
      const UnboundedEquilibrium eq = solve_unbounded_sne(s);
      prices = eq.prices;
      profile = eq.offloads;
    }
    return ordered_json{{"follower_max_gain", certify_follower_ne(s, profile, prices, opts)},
                        {"leader_max_gain", certify_leader_ne(s, prices, opts)}};
  };

  try {
    if (cfg.random) {
      std::mt19937_64 rng(cfg.random->seed);
      ordered_json rows = ordered_json::array();
      for (int i = 0; i < cfg.random->count; ++i) {
        const ScenarioSpec s =
            cfg.random->bounded
                ? random_bounded_scenario(rng, cfg.random->max_flows, cfg.random->max_aps)
                : random_unbounded_scenario(rng, cfg.random->max_flows, cfg.random->max_aps);
        ordered_json row = certify_one(s);
        row["num_flows"] = s.num_flows();
        row["num_aps"] = s.num_aps;
        rows.push_back(row);
      }
      report["scenarios"] = rows;
    } else {
      report.update(certify_one(require_scenario(cfg)));
    }
  } catch (const std::runtime_error& err) {
    report["error"] = err.what();
    write_text_file(out_path(out_dir, "certify.json"), report.dump(2) + "\n");
    return 3;
  }

  write_text_file(out_path(out_dir, "certify.json"), report.dump(2) + "\n");
  return 0;
}

}  // namespace offload
