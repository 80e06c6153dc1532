#pragma once

#include <rdpdhg/grid.hpp>
#include <rdpdhg/models.hpp>
#include <rdpdhg/pdhg.hpp>
#include <rdpdhg/stepper.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace rdpdhg::cli {

/// A fully resolved run: preset defaults with every override from the config applied.
struct RunConfig
{
  std::string preset;
  std::string initial_condition;
  ModelParams model;
  Boundary bc = Boundary::Periodic;
  double side_length = 1.0;
  int n = 64;
  double origin = 0.0;
  TimeSchedule schedule;
  PdhgParams pdhg;
  std::vector<double> snapshot_times;
  std::vector<int> trace_steps;
  std::filesystem::path output_dir = "rdpdhg-out";
  std::uint64_t seed = 0;
  bool write_csv = true;
  bool write_binary = true;

  GridSpec grid() const { return GridSpec::make(bc, side_length, n, origin); }
};

/// Parses and validates a config document. Unknown keys and bad values throw
/// ValidationError naming the offending field.
RunConfig parse_config(nlohmann::json const &doc);
RunConfig load_config(std::filesystem::path const &path);

/// The config document that reproduces a preset with its defaults.
nlohmann::json preset_config(std::string const &name);

nlohmann::json model_to_json(ModelParams const &model);

/// Ten evenly spaced interior times plus 0 and T.
std::vector<double> default_snapshot_times(double final_time);

} // namespace rdpdhg::cli
