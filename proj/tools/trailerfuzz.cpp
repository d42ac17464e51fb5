// trailerfuzz: closed-loop truck-and-trailer backing simulator.
//
//   trailerfuzz run --scenario data/scenarios/right_high.json --out results/right_high [--mode both]
//   trailerfuzz sweep --grid grid.json --out results/sweep
//   trailerfuzz surface --controller flc_c --resolution 121 --out flc_c.csv

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trailerfuzz/cli.hpp"

namespace {

void add_common(CLI::App* cmd, std::string& out, std::optional<std::string>& controllers) {
  cmd->add_option("--out", out, "Output directory")->required();
  cmd->add_option("--controllers", controllers, "JSON document overriding flc_t and/or flc_c")
      ->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace trailerfuzz;

  CLI::App app{"Cascaded fuzzy controller for backing a truck and trailer to a dock"};
  app.require_subcommand(1);

  cli::RunOptions run_opt;
  std::optional<std::string> mode_name;
  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario file");
  run_cmd->add_option("--scenario", run_opt.scenario_path, "Scenario JSON file")->required();
  add_common(run_cmd, run_opt.out_dir, run_opt.controllers_path);
  run_cmd->add_option("--mode", mode_name, "cascade, reference or both")
      ->check(CLI::IsMember({"cascade", "reference", "both"}));
  run_cmd->add_option("--max-steps", run_opt.max_steps, "Override the scenario's step limit")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--tick-every", run_opt.tick_every, "Heading tick spacing in the SVG (0 = none)");

  cli::SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of initial conditions");
  sweep_cmd->add_option("--grid", sweep_opt.grid_path, "Grid JSON file")->required();
  add_common(sweep_cmd, sweep_opt.out_dir, sweep_opt.controllers_path);
  sweep_cmd->add_option("--max-steps", sweep_opt.max_steps, "Override the per-cell step limit")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", sweep_opt.threads, "Worker threads")->check(CLI::PositiveNumber);

  cli::SurfaceOptions surf_opt;
  auto* surf_cmd = app.add_subcommand("surface", "Dump a controller's input/output surface as CSV");
  surf_cmd->add_option("--controller", surf_opt.controller, "flc_t or flc_c")->required();
  surf_cmd->add_option("--resolution", surf_opt.resolution, "Samples per input axis (>= 2)");
  surf_cmd->add_option("--out", surf_opt.out_path, "Output CSV file")->required();
  surf_cmd->add_option("--controllers", surf_opt.controllers_path, "JSON document overriding flc_t and/or flc_c")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  const cli::Console con{std::cout, std::cerr};
  if (run_cmd->parsed()) {
    if (mode_name) run_opt.mode = mode_from_string(*mode_name);
    return cli::cmd_run(run_opt, con);
  }
  if (sweep_cmd->parsed()) return cli::cmd_sweep(sweep_opt, con);
  return cli::cmd_surface(surf_opt, con);
}
