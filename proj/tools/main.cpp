#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tnn/cli_commands.hpp"

namespace {

using Command = std::function<int(const tnn::cli::ExperimentConfig&, std::ostream&, std::ostream&)>;

void add_common(CLI::App* sub, tnn::cli::ExperimentConfig& c) {
  sub->add_option("--target", c.target, "paper_f | runge | exp | poly:c0,c1,... | sincos | monomial:b1,...")
      ->capture_default_str();
  sub->add_option("--interval", c.interval, "interval endpoints A B")->expected(2);
  sub->add_option("--box", c.box, "box A1 B1 A2 B2 ... (with --dim > 1)")->expected(-1);
  sub->add_option("--r", c.orders, "Taylor order(s), comma separated")->delimiter(',')->capture_default_str();
  sub->add_option("--dim", c.dim, "dimension")->capture_default_str();
  sub->add_option("--n", c.n, "gaps per axis in the base grid")->capture_default_str();
  sub->add_option("--levels", c.levels, "number of nested grid levels")->capture_default_str();
  sub->add_option("--jitter", c.jitter, "relative node perturbation, < 1/4")->capture_default_str();
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--samples", c.samples, "error samples (total; per-axis root for --dim > 1)")
      ->capture_default_str();
  sub->add_option("--m", c.m, "sigmoid transition half-width")->capture_default_str();
  sub->add_option("--operator", c.op, "taylor | lagrange | both")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor-accelerated neural network interpolation on quasi-uniform grids"};
  app.require_subcommand(1);

  tnn::cli::ExperimentConfig config;
  std::string output;
  std::map<CLI::App*, Command> commands;

  auto* grid = app.add_subcommand("grid", "write a seeded quasi-uniform grid");
  add_common(grid, config);
  grid->add_option("-o,--output", output, "output file (default stdout)");
  commands[grid] = tnn::cli::cmd_grid;

  auto* converge = app.add_subcommand("converge", "sup-norm errors over a nested grid ladder, CSV");
  add_common(converge, config);
  commands[converge] = tnn::cli::cmd_converge;

  auto* compare = app.add_subcommand("compare", "Taylor vs Lagrange baseline per (n, r), CSV");
  add_common(compare, config);
  commands[compare] = tnn::cli::cmd_compare;

  auto* eval = app.add_subcommand("eval", "evaluate an operator at given points, CSV");
  add_common(eval, config);
  eval->add_option("--grid", config.grid_file, "grid file written by 'grid'");
  eval->add_option("--points", config.points, "points, comma separated")->delimiter(',');
  eval->add_option("--points-file", config.points_file, "file with one point per line");

  commands[eval] = tnn::cli::cmd_eval;

  auto* jackson = app.add_subcommand("jackson", "error / modulus ratio across a grid ladder");
  add_common(jackson, config);
  commands[jackson] = tnn::cli::cmd_jackson;

  auto* verify = app.add_subcommand("verify-kernel", "check the ramp kernel against M1..M5");
  add_common(verify, config);
  commands[verify] = tnn::cli::cmd_verify_kernel;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tnn::cli::kExitValidation;
  }

  for (auto& [sub, command] : commands) {
    if (!sub->parsed()) continue;
    if (!output.empty()) {
      std::ofstream file(output, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open " << output << '\n';
        return tnn::cli::kExitValidation;
      }
      return command(config, file, std::cerr);
    }
    return command(config, std::cout, std::cerr);
  }
  return tnn::cli::kExitValidation;
}
