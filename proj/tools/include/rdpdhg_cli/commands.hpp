#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rdpdhg::cli {

enum ExitCode : int
{
  kSuccess = 0,
  kValidation = 1,
  kSolverFailure = 2,
  kIo = 3
};

int run_command(std::filesystem::path const &config_path, std::ostream &out, std::ostream &err);
int theory_command(std::vector<double> const &kappas, std::ostream &out, std::ostream &err);
int presets_command(std::ostream &out);
int preset_config_command(std::string const &name, std::ostream &out, std::ostream &err);

} // namespace rdpdhg::cli
