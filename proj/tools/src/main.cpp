#include "rdpdhg_cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
  CLI::App app{"Implicit reaction-diffusion solver driven by preconditioned PDHG"};
  app.require_subcommand(1);

  std::string config_path;
  auto *run = app.add_subcommand("run", "Run a configuration file");
  run->add_option("config", config_path, "JSON run configuration")->required();

  std::vector<double> kappas;
  auto *theory = app.add_subcommand("theory", "Print optimal step products and rates for condition numbers");
  theory->add_option("kappa", kappas, "Condition numbers (>= 1)");

  std::string config_for;
  auto *presets = app.add_subcommand("presets", "List presets and their default parameters");
  presets->add_option("--config", config_for, "Print the JSON config of one preset");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : rdpdhg::cli::kValidation;
  }

  using namespace rdpdhg::cli;
  if (*run) { return run_command(config_path, std::cout, std::cerr); }
  if (*theory) { return theory_command(kappas, std::cout, std::cerr); }
  if (!config_for.empty()) { return preset_config_command(config_for, std::cout, std::cerr); }
  return presets_command(std::cout);
}
