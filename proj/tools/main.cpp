#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpbvp/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Meshless probabilistic boundary-value-problem solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int grid = 101;
  double ell_min = 0.1, ell_max = 10.0;
  int steps = 40;
  std::vector<int> ni_list;
  std::string case_name;

  auto* solve = app.add_subcommand("solve", "Solve the configured problem on a regular grid");
  solve->add_option("--config", config_path, "Problem config (JSON)")->required();
  solve->add_option("--grid", grid, "Grid resolution per axis");
  solve->add_option("--out", out_path, "Output CSV path")->required();

  auto* likelihood =
      app.add_subcommand("likelihood", "Normalized marginal-likelihood profile over lengthscales");
  likelihood->add_option("--config", config_path, "Problem config (JSON)")->required();
  likelihood->add_option("--ell-min", ell_min, "Smallest lengthscale")->required();
  likelihood->add_option("--ell-max", ell_max, "Largest lengthscale")->required();
  likelihood->add_option("--steps", steps, "Number of log-spaced lengthscales")->required();
  likelihood->add_option("--out", out_path, "Output CSV path")->required();

  auto* convergence =
      app.add_subcommand("convergence", "Error statistics vs. the config's oracle per n_i");
  convergence->add_option("--config", config_path, "Problem config (JSON)")->required();
  convergence->add_option("--ni", ni_list, "Interior point counts (comma separated)")
      ->required()
      ->delimiter(',');
  convergence->add_option("--out", out_path, "Output CSV path")->required();

  auto* export_case = app.add_subcommand("export-case", "Write a built-in case study config");
  export_case
      ->add_option("--case", case_name,
                   "heat1d, disk_poisson, disk_gaussian_source or star_gaussian_source")
      ->required();
  export_case->add_option("--out", out_path, "Output JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (solve->parsed()) return gpbvp::cmd_solve(config_path, grid, out_path);
  if (likelihood->parsed())
    return gpbvp::cmd_likelihood(config_path, ell_min, ell_max, steps, out_path);
  if (convergence->parsed()) return gpbvp::cmd_convergence(config_path, ni_list, out_path);
  if (export_case->parsed()) return gpbvp::cmd_export_case(case_name, out_path);
  return gpbvp::kExitConfig;
}
