#include "offload/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace offload {

using nlohmann::ordered_json;

namespace {

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
}

double require_number(const ordered_json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return obj[key].get<double>();
}

UtilitySpec parse_utility(const ordered_json& u, const std::string& where) {
  if (!u.is_object()) throw ConfigError(where + ": expected an object");
  reject_unknown_keys(u, {"family", "weight", "exponent"}, where);
  if (!u.contains("family") || !u["family"].is_string())
    throw ConfigError(where + ".family: expected a string");
  const std::string family = u["family"].get<std::string>();
  UtilitySpec spec;
  spec.weight = require_number(u, "weight", where);
  if (family == "linear") {
    spec.family = UtilityFamily::Linear;
  } else if (family == "logarithmic" || family == "log") {
    spec.family = UtilityFamily::Logarithmic;
  } else if (family == "power") {
    spec.family = UtilityFamily::PowerLaw;
    spec.exponent = require_number(u, "exponent", where);
  } else {
    throw ConfigError(where + ".family: expected linear | power | logarithmic");
  }
  if (family != "power" && u.contains("exponent"))
    throw ConfigError(where + ".exponent: only valid for the power family");
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(where + ": " + err.what());
  }
  return spec;
}

ScenarioSpec parse_scenario(const ordered_json& sc) {
  if (!sc.is_object()) throw ConfigError("scenario: expected an object");
  reject_unknown_keys(sc, {"num_aps", "capacity", "flows"}, "scenario");
  ScenarioSpec spec;
  if (!sc.contains("num_aps") || !sc["num_aps"].is_number_integer())
    throw ConfigError("scenario.num_aps: expected an integer");
  spec.num_aps = sc["num_aps"].get<int>();

  if (!sc.contains("capacity")) throw ConfigError("scenario.capacity: missing (number or \"unbounded\")");
  if (sc["capacity"].is_string()) {
    if (sc["capacity"].get<std::string>() != "unbounded")
      throw ConfigError("scenario.capacity: expected a number or \"unbounded\"");
  } else if (sc["capacity"].is_number()) {
    spec.capacity = sc["capacity"].get<double>();
  } else {
    throw ConfigError("scenario.capacity: expected a number or \"unbounded\"");
  }

  if (!sc.contains("flows") || !sc["flows"].is_array() || sc["flows"].empty())
    throw ConfigError("scenario.flows: expected a non-empty array");
  int f = 0;
  for (const auto& fl : sc["flows"]) {
    const std::string where = "scenario.flows[" + std::to_string(f) + "]";
    if (!fl.is_object()) throw ConfigError(where + ": expected an object");
    reject_unknown_keys(fl, {"utility", "costs", "cost"}, where);
    FlowSpec flow;
    if (!fl.contains("utility")) throw ConfigError(where + ".utility: missing");
    flow.utility = parse_utility(fl["utility"], where + ".utility");
    if (fl.contains("costs") == fl.contains("cost"))
      throw ConfigError(where + ": provide exactly one of \"costs\" (per AP) or \"cost\" (shared)");
    if (fl.contains("cost")) {
      flow.costs.assign(spec.num_aps, require_number(fl, "cost", where));
    } else {
      if (!fl["costs"].is_array()) throw ConfigError(where + ".costs: expected an array");
      for (const auto& e : fl["costs"]) {
        if (!e.is_number()) throw ConfigError(where + ".costs: expected numbers");
        flow.costs.push_back(e.get<double>());
      }
    }
    spec.flows.push_back(std::move(flow));
    ++f;
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("scenario: ") + err.what());
  }
  return spec;
}

SweepAxis parse_axis(const ordered_json& ax) {
  if (!ax.is_object()) throw ConfigError("sweep.axis: expected an object");
  reject_unknown_keys(ax, {"kind", "flow", "ap", "values"}, "sweep.axis");
  SweepAxis axis;
  if (!ax.contains("kind") || !ax["kind"].is_string())
    throw ConfigError("sweep.axis.kind: expected a string");
  const std::string kind = ax["kind"].get<std::string>();
  if (kind == "cost") axis.kind = SweepAxis::Kind::Cost;
  else if (kind == "weight") axis.kind = SweepAxis::Kind::Weight;
  else if (kind == "exponent") axis.kind = SweepAxis::Kind::Exponent;
  else if (kind == "num_aps") axis.kind = SweepAxis::Kind::NumAps;
  else if (kind == "num_flows") axis.kind = SweepAxis::Kind::NumFlows;
  else throw ConfigError("sweep.axis.kind: expected cost | weight | exponent | num_aps | num_flows");

  if (ax.contains("flow")) {
    if (!ax["flow"].is_number_integer() || ax["flow"].get<int>() < 1)
      throw ConfigError("sweep.axis.flow: expected a 1-based flow index");
    axis.flow = ax["flow"].get<int>() - 1;
  }
  if (ax.contains("ap")) {
    if (!ax["ap"].is_number_integer() || ax["ap"].get<int>() < 1)
      throw ConfigError("sweep.axis.ap: expected a 1-based AP index");
    axis.ap = ax["ap"].get<int>() - 1;
  }
  if (!ax.contains("values") || !ax["values"].is_array() || ax["values"].empty())
    throw ConfigError("sweep.axis.values: expected a non-empty array of numbers");
  for (const auto& v : ax["values"]) {
    if (!v.is_number()) throw ConfigError("sweep.axis.values: expected numbers");
    axis.values.push_back(v.get<double>());
  }
  return axis;
}

ExperimentConfig parse_document(const ordered_json& doc);

void merge_overrides(ExperimentConfig& cfg, const ordered_json& doc) {
  if (doc.contains("scenario")) cfg.scenario = parse_scenario(doc["scenario"]);
  if (doc.contains("solver")) {
    const auto& so = doc["solver"];
    if (!so.is_object()) throw ConfigError("solver: expected an object");
    reject_unknown_keys(so, {"initial_prices", "tol", "max_iters", "schedule"}, "solver");
    if (so.contains("tol")) {
      cfg.solver.tol = require_number(so, "tol", "solver");
      if (!(cfg.solver.tol > 0.0)) throw ConfigError("solver.tol: must be > 0");
    }
    if (so.contains("max_iters")) {
      if (!so["max_iters"].is_number_integer() || so["max_iters"].get<int>() < 1)
        throw ConfigError("solver.max_iters: expected a positive integer");
      cfg.solver.max_iters = so["max_iters"].get<int>();
    }
    if (so.contains("schedule")) {
      if (!so["schedule"].is_string()) throw ConfigError("solver.schedule: expected a string");
      const std::string sched = so["schedule"].get<std::string>();
      if (sched == "roundrobin") cfg.solver.schedule = DynamicsOptions::Schedule::RoundRobin;
      else if (sched == "jacobi") cfg.solver.schedule = DynamicsOptions::Schedule::Jacobi;
      else throw ConfigError("solver.schedule: expected roundrobin | jacobi");
    }
    if (so.contains("initial_prices")) {
      if (!so["initial_prices"].is_array())
        throw ConfigError("solver.initial_prices: expected an array");
      cfg.initial_prices.clear();
      for (const auto& v : so["initial_prices"]) {
        if (!v.is_number() || v.get<double>() < 0.0)
          throw ConfigError("solver.initial_prices: expected numbers >= 0");
        cfg.initial_prices.push_back(v.get<double>());
      }
    }
  }
  if (doc.contains("certify")) {
    const auto& ce = doc["certify"];
    if (!ce.is_object()) throw ConfigError("certify: expected an object");
    reject_unknown_keys(ce, {"grid_points", "radius"}, "certify");
    CertifyOptions opts = cfg.certify.value_or(CertifyOptions{});
    if (ce.contains("grid_points")) {
      if (!ce["grid_points"].is_number_integer() || ce["grid_points"].get<int>() < 100)
        throw ConfigError("certify.grid_points: expected an integer >= 100");
      opts.grid_points = ce["grid_points"].get<int>();
    }
    if (ce.contains("radius")) {
      opts.radius = require_number(ce, "radius", "certify");
      if (!(opts.radius > 0.0)) throw ConfigError("certify.radius: must be > 0");
    }
    cfg.certify = opts;
  }
  if (doc.contains("sweep")) {
    const auto& sw = doc["sweep"];
    if (!sw.is_object()) throw ConfigError("sweep: expected an object");
    reject_unknown_keys(sw, {"preset", "axis"}, "sweep");
    if (sw.contains("preset") == sw.contains("axis"))
      throw ConfigError("sweep: provide exactly one of \"preset\" or \"axis\"");
    if (sw.contains("preset")) {
      if (!sw["preset"].is_string()) throw ConfigError("sweep.preset: expected a string");
      const std::string name = sw["preset"].get<std::string>();
      ExperimentConfig expanded = preset_config(name);
      if (!expanded.sweep) throw ConfigError("sweep.preset: \"" + name + "\" is not a sweep preset");
      if (!cfg.scenario && expanded.scenario) cfg.scenario = expanded.scenario;
      cfg.sweep = expanded.sweep;
    } else {
      cfg.sweep = SweepSpec{"", parse_axis(sw["axis"])};
    }
  }
  if (doc.contains("random")) {
    const auto& ra = doc["random"];
    if (!ra.is_object()) throw ConfigError("random: expected an object");
    reject_unknown_keys(ra, {"count", "max_flows", "max_aps", "regime", "seed"}, "random");
    RandomSpec spec;
    if (ra.contains("count")) spec.count = ra["count"].get<int>();
    if (ra.contains("max_flows")) spec.max_flows = ra["max_flows"].get<int>();
    if (ra.contains("max_aps")) spec.max_aps = ra["max_aps"].get<int>();
    if (spec.count < 1 || spec.max_flows < 1 || spec.max_aps < 2)
      throw ConfigError("random: count/max_flows must be >= 1 and max_aps >= 2");
    if (ra.contains("regime")) {
      if (!ra["regime"].is_string()) throw ConfigError("random.regime: expected a string");
      const std::string regime = ra["regime"].get<std::string>();
      if (regime == "bounded") spec.bounded = true;
      else if (regime == "unbounded") spec.bounded = false;
      else throw ConfigError("random.regime: expected bounded | unbounded");
    }
    if (ra.contains("seed")) spec.seed = ra["seed"].get<unsigned long long>();
    cfg.random = spec;
  }
}

ExperimentConfig parse_document(const ordered_json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown_keys(doc,
                      {"schema_version", "preset", "scenario", "solver", "certify", "sweep", "random"},
                      "config");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != 1)
    throw ConfigError("schema_version: expected the integer 1");

  ExperimentConfig cfg;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("preset: expected a string");
    cfg = preset_config(doc["preset"].get<std::string>());
  }
  merge_overrides(cfg, doc);
  return cfg;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("config: invalid JSON: ") + err.what());
  }
  return parse_document(doc);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string fmt_sig(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string solution_csv(const ScenarioSpec& s, const PriceVector& prices, const OffloadMatrix& r) {
  std::ostringstream out;
  out << "flow,price";
  for (int i = 1; i <= s.num_aps; ++i) out << ",r_" << i;
  out << "\n";
  for (int f = 0; f < s.num_flows(); ++f) {
    out << (f + 1) << "," << fmt_sig(prices[f]);
    for (int i = 0; i < s.num_aps; ++i) out << "," << fmt_sig(r.at(f, i));
    out << "\n";
  }
  return out.str();
}

std::string trace_csv(const DynamicsTrace& trace) {
  std::ostringstream out;
  const int F = trace.iterates.empty() ? 0 : static_cast<int>(trace.iterates.front().prices.size());
  out << "n";
  for (int f = 1; f <= F; ++f) out << ",C_" << f;
  for (int f = 1; f <= F; ++f) out << ",rho_" << f;
  out << ",delta_inf\n";
  for (const auto& it : trace.iterates) {
    out << it.n;
    for (double c : it.prices) out << "," << fmt_sig(c);
    for (double r : it.rho) out << "," << fmt_sig(r);
    out << "," << fmt_sig(it.delta) << "\n";
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace offload
