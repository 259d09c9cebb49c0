#include <iostream>

#include "CLI11.hpp"
#include "vzor/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"V-ZOR oracle protocol simulator"};
  app.require_subcommand(1);

  vzor::cli::RunOptions run;
  std::uint64_t seed = 0;
  auto* run_cmd = app.add_subcommand("run", "simulate a scenario and write trace, CSV and metrics");
  run_cmd->add_option("--config", run.config_path, "scenario config file")->required();
  run_cmd->add_option("--out", run.out_dir, "output directory")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "override the config seed");

  std::string trace_path;
  auto* verify_cmd = app.add_subcommand("verify-trace", "replay a trace and cross-check every outcome");
  verify_cmd->add_option("trace", trace_path, "trace.jsonl path")->required();

  vzor::cli::SweepOptions sweep;
  std::string values;
  auto* sweep_cmd = app.add_subcommand("sweep", "run once per parameter value, emit a combined CSV");
  sweep_cmd->add_option("--config", sweep.config_path, "base scenario config")->required();
  sweep_cmd->add_option("--param", sweep.param, "n, f_min, delta_net, t_prove, fraud_period or b")->required();
  sweep_cmd->add_option("--values", values, "comma-separated values")->required();
  sweep_cmd->add_option("--out", sweep.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : vzor::cli::kExitParse;
  }

  if (*run_cmd) {
    if (*seed_opt) run.seed = seed;
    return vzor::cli::cmd_run(run, std::cout, std::cerr);
  }
  if (*verify_cmd) return vzor::cli::cmd_verify_trace(trace_path, std::cout, std::cerr);
  sweep.values = vzor::cli::split_values(values);
  return vzor::cli::cmd_sweep(sweep, std::cout, std::cerr);
}
