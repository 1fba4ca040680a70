// offload — equilibria, price dynamics, and efficiency sweeps for the
// data-offloading pricing game.
//
//   offload solve    --config cfg.json [--out DIR]
//   offload dynamics --config cfg.json [--out DIR] [--schedule roundrobin|jacobi]
//   offload sweep    --config cfg.json | --preset fig2 [--out DIR]
//   offload certify  --config cfg.json [--seed N] [--out DIR]
//
// Exit codes: 0 success, 2 config/schema error, 3 non-convergence.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "offload/commands.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::optional<std::string> schedule;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::optional<unsigned long long> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool allow_preset) {
  cmd->add_option("--config", args.config_path, "JSON experiment config");
  if (allow_preset)
    cmd->add_option("--preset", args.preset, "named figure preset (fig1a, fig1b, fig2..fig8)");
  cmd->add_option("--out", args.out_dir, "output directory (default: .)");
  cmd->add_option("--schedule", args.schedule, "price update order: roundrobin | jacobi");
  cmd->add_option("--tol", args.tol, "convergence tolerance on ||dC||_inf");
  cmd->add_option("--max-iters", args.max_iters, "dynamics iteration cap");
  cmd->add_option("--seed", args.seed, "seed for randomized certification matrices");
}

offload::ExperimentConfig build_config(const CommonArgs& args) {
  offload::ExperimentConfig cfg;
  if (!args.config_path.empty())
    cfg = offload::load_config_file(args.config_path);
  else if (!args.preset.empty())
    cfg = offload::preset_config(args.preset);
  else
    throw offload::ConfigError("config: pass --config PATH (or --preset NAME where supported)");

  if (args.schedule) {
    if (*args.schedule == "roundrobin")
      cfg.solver.schedule = offload::DynamicsOptions::Schedule::RoundRobin;
    else if (*args.schedule == "jacobi")
      cfg.solver.schedule = offload::DynamicsOptions::Schedule::Jacobi;
    else
      throw offload::ConfigError("--schedule: expected roundrobin | jacobi");
  }
  if (args.tol) {
    if (!(*args.tol > 0.0)) throw offload::ConfigError("--tol: must be > 0");
    cfg.solver.tol = *args.tol;
  }
  if (args.max_iters) {
    if (*args.max_iters < 1) throw offload::ConfigError("--max-iters: must be >= 1");
    cfg.solver.max_iters = *args.max_iters;
  }
  if (args.seed) {
    if (!cfg.random) cfg.random = offload::RandomSpec{};
    cfg.random->seed = *args.seed;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg data-offloading pricing: equilibria, dynamics, PoA"};
  app.require_subcommand(1);

  CommonArgs solve_args, dynamics_args, sweep_args, certify_args;
  CLI::App* solve = app.add_subcommand("solve", "compute the equilibrium for a scenario");
  add_common(solve, solve_args, true);
  CLI::App* dynamics = app.add_subcommand("dynamics", "run the price dynamics, emit the trace");
  add_common(dynamics, dynamics_args, true);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter/PoA sweep (figure presets or custom axis)");
  add_common(sweep, sweep_args, true);
  CLI::App* certify = app.add_subcommand("certify", "brute-force deviation certificates");
  add_common(certify, certify_args, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return offload::cmd_solve(build_config(solve_args), solve_args.out_dir);
    if (dynamics->parsed())
      return offload::cmd_dynamics(build_config(dynamics_args), dynamics_args.out_dir);
    if (sweep->parsed()) return offload::cmd_sweep(build_config(sweep_args), sweep_args.out_dir);
    if (certify->parsed())
      return offload::cmd_certify(build_config(certify_args), certify_args.out_dir);
  } catch (const offload::ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
