// Command-line front end: solve the analytic chains, run the Monte Carlo
// simulator, sweep a parameter into CSV, or print the large-gossip limit.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gossipnet/chains.hpp"
#include "gossipnet/simulator.hpp"
#include "gossipnet/sweep.hpp"

namespace {

using gossipnet::ChainResult;
using gossipnet::Params;
using gossipnet::Policy;
using gossipnet::SimConfig;
using gossipnet::SimEstimate;
using gossipnet::SweepSpec;

struct ParamFlags {
  int n = 100;
  double lambda_e = 2.0;
  double lambda_u = 5.0;
  double lambda_r = 1.0;
  double lambda = 0.1;
  std::string policy = "reliability";
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool with_policy = true) {
  cmd->add_option("--n", f.n, "number of user nodes")
      ->capture_default_str();
  cmd->add_option("--lambda-e", f.lambda_e, "event update rate")
      ->capture_default_str();
  cmd->add_option("--lambda-u", f.lambda_u, "unreliable source total rate")
      ->capture_default_str();
  cmd->add_option("--lambda-r", f.lambda_r, "reliable source total rate")
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "per-node gossip output rate")
      ->capture_default_str();
  if (with_policy)
    cmd->add_option("--policy", f.policy,
                    "acceptance policy: reliability or freshness")
        ->capture_default_str();
}

Params to_params(const ParamFlags& f) {
  Params p;
  p.n = f.n;
  p.lambda_e = f.lambda_e;
  p.lambda_u = f.lambda_u;
  p.lambda_r = f.lambda_r;
  p.lambda = f.lambda;
  p.policy = gossipnet::parse_policy(f.policy);
  return p;
}

struct SimFlags {
  double horizon = 1e6;
  double warmup = -1.0;  // negative: default to horizon / 1000
  std::uint64_t seed = 1;
  int replications = 1;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--horizon", f.horizon, "total simulated time")
      ->capture_default_str();
  cmd->add_option("--warmup", f.warmup,
                  "time excluded from averages (default horizon/1000)");
  cmd->add_option("--seed", f.seed, "base RNG seed")->capture_default_str();
  cmd->add_option("--replications", f.replications,
                  "independent replications, seeded seed, seed+1, ...")
      ->capture_default_str();
}

double resolved_warmup(const SimFlags& f) {
  return f.warmup < 0.0 ? f.horizon / 1000.0 : f.warmup;
}

std::string g12(double v) { return gossipnet::format_g12(v); }

void print_params_line(const Params& p) {
  std::cout << "n=" << p.n << " lambda_e=" << g12(p.lambda_e)
            << " lambda_u=" << g12(p.lambda_u)
            << " lambda_r=" << g12(p.lambda_r) << " lambda=" << g12(p.lambda)
            << " policy=" << gossipnet::policy_name(p.policy) << "\n";
}

int cmd_solve(const ParamFlags& pf, bool all_k) {
  const Params params = to_params(pf);
  const ChainResult r = gossipnet::solve(params);
  print_params_line(params);
  std::cout << "F = " << g12(r.f_value) << "\n";
  std::cout << "x1 = " << g12(r.x1_value) << "\n";
  if (all_k) {
    const bool fresh = params.policy == Policy::freshness_first;
    std::cout << (fresh ? "k,a_k,b_k,e_k" : "k,a_k,b_k,c_k,d_k,e_k") << "\n";
    for (int k = 1; k <= r.n; ++k) {
      const auto i = static_cast<std::size_t>(k - 1);
      std::cout << k << ',' << g12(r.a[i]) << ',' << g12(r.b[i]);
      if (!fresh) std::cout << ',' << g12(r.c[i]) << ',' << g12(r.d[i]);
      std::cout << ',' << g12(r.e[i]) << "\n";
    }
  }
  return 0;
}

int cmd_simulate(const ParamFlags& pf, const SimFlags& sf,
                 const std::string& csv_path) {
  SimConfig cfg{to_params(pf), sf.horizon, resolved_warmup(sf), sf.seed,
                sf.replications};
  const SimEstimate est = gossipnet::run(cfg);
  print_params_line(cfg.params);
  std::cout << "horizon=" << g12(cfg.horizon) << " warmup=" << g12(cfg.warmup)
            << " seed=" << cfg.seed << " replications=" << cfg.replications
            << "\n";
  std::cout << "f_hat = " << g12(est.f_hat) << " (stderr " << g12(est.f_stderr)
            << ")\n";
  std::cout << "x1_hat = " << g12(est.x1_hat) << " (stderr "
            << g12(est.x1_stderr) << ")\n";
  std::cout << "events = " << est.events_processed << "\n";

  if (!csv_path.empty()) {
    gossipnet::SweepRow row;
    row.swept = gossipnet::SweepAxis::n;
    row.swept_value = cfg.params.n;
    row.params = cfg.params;
    // solver columns are part of the schema, so --csv needs solvable params
    const ChainResult chains = gossipnet::solve(cfg.params);
    row.f_solver = chains.f_value;
    row.x1_solver = chains.x1_value;
    row.simulated = true;
    row.f_sim = est.f_hat;
    row.f_sim_stderr = est.f_stderr;
    row.x1_sim = est.x1_hat;
    row.x1_sim_stderr = est.x1_stderr;
    row.horizon = cfg.horizon;
    row.warmup = cfg.warmup;
    row.seed = cfg.seed;
    row.replications = cfg.replications;
    gossipnet::write_sweep_csv_file(csv_path, {row});
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

std::vector<double> default_grid(gossipnet::SweepAxis axis) {
  if (axis == gossipnet::SweepAxis::n)
    return {2, 5, 10, 20, 50, 100, 200};
  // nine points, log-spaced over [1e-2, 1e2]
  std::vector<double> g;
  for (int i = 0; i <= 8; ++i) g.push_back(std::pow(10.0, -2.0 + 0.5 * i));
  return g;
}

int cmd_sweep(const ParamFlags& pf, const SimFlags& sf,
              const std::string& param, std::vector<double> grid,
              const std::string& policy, bool compare,
              const std::string& out_path) {
  SweepSpec spec;
  spec.swept = gossipnet::parse_axis(param);
  spec.grid = grid.empty() ? default_grid(spec.swept) : std::move(grid);
  spec.base = to_params(pf);
  if (policy == "both")
    spec.policies = {Policy::reliability_first, Policy::freshness_first};
  else
    spec.policies = {gossipnet::parse_policy(policy)};
  spec.compare = compare;
  spec.horizon = sf.horizon;
  spec.warmup = resolved_warmup(sf);
  spec.seed = sf.seed;
  spec.replications = sf.replications;

  const auto rows = gossipnet::run_sweep(spec);
  gossipnet::write_sweep_csv_file(out_path, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_limit(const ParamFlags& pf) {
  const double v = gossipnet::large_gossip_limit(to_params(pf));
  std::cout << "large-gossip limit F = " << g12(v) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gossipnet: reliability and version age of two-source gossip "
      "networks, by analytic chain solver and by Monte Carlo simulation"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "config file of key=value pairs mirroring the flags, in "
                 "[subcommand] sections; flags override the file");

  // let flags like --config given after a subcommand reach the main app
  app.fallthrough();

  ParamFlags solve_pf;
  bool all_k = false;
  CLI::App* solve = app.add_subcommand(
      "solve", "evaluate the long-run chains: F = a_1 and x1 = e_1");
  solve->fallthrough();
  add_param_flags(solve, solve_pf);
  solve->add_flag("--all-k", all_k, "print the full k-indexed chains");

  ParamFlags sim_pf;
  SimFlags sim_sf;
  std::string sim_csv;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "estimate F and x1 by discrete-event simulation");
  simulate->fallthrough();
  add_param_flags(simulate, sim_pf);
  add_sim_flags(simulate, sim_sf);
  simulate->add_option("--csv", sim_csv,
                       "also write the result as a one-row CSV file");

  ParamFlags sweep_pf;
  SimFlags sweep_sf;
  std::string sweep_param;
  std::vector<double> sweep_grid;
  std::string sweep_policy = "both";
  std::string sweep_out;
  bool compare = false;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "solve (and optionally simulate) along a parameter grid");
  sweep->fallthrough();
  add_param_flags(sweep, sweep_pf, /*with_policy=*/false);
  sweep->add_option("--param", sweep_param,
                    "swept parameter: n, lambda, lambda_e, lambda_u, lambda_r")
      ->required();
  sweep->add_option("--grid", sweep_grid,
                    "comma-separated grid values, strictly increasing")
      ->delimiter(',');
  sweep->add_option("--policy", sweep_policy,
                    "reliability, freshness or both")
      ->capture_default_str();
  sweep->add_flag("--compare", compare,
                  "also run the simulator at every grid point");
  add_sim_flags(sweep, sweep_sf);
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  ParamFlags limit_pf;
  CLI::App* limit = app.add_subcommand(
      "limit", "print the closed-form large-gossip limit of F");
  limit->fallthrough();
  add_param_flags(limit, limit_pf, /*with_policy=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_pf, all_k);
    if (simulate->parsed()) return cmd_simulate(sim_pf, sim_sf, sim_csv);
    if (sweep->parsed())
      return cmd_sweep(sweep_pf, sweep_sf, sweep_param, sweep_grid,
                       sweep_policy, compare, sweep_out);
    if (limit->parsed()) return cmd_limit(limit_pf);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
