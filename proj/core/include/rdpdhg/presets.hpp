#pragma once

#include "rdpdhg/grid.hpp"
#include "rdpdhg/models.hpp"
#include "rdpdhg/pdhg.hpp"
#include "rdpdhg/stepper.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdpdhg {

/// A ready-to-run experiment: model, grid, schedule, solver settings and a named initial condition.
struct Preset
{
  std::string name;
  std::string description;
  ModelParams model;
  Boundary bc = Boundary::Periodic;
  double side_length = 1.0;
  int n = 64;
  double origin = 0.0;
  TimeSchedule schedule;
  PdhgParams pdhg;
  /// Initial condition draws from the seeded generator.
  bool random_initial = false;

  GridSpec grid() const { return GridSpec::make(bc, side_length, n, origin); }
};

std::vector<std::string> const &preset_names();

/// Throws ValidationError listing the valid names when `name` is unknown.
Preset const &find_preset(std::string_view name);

/// Samples the named initial condition on `grid`. Parameters that enter the
/// initial data (the Schnakenberg equilibrium) are read from `model`.
SystemField reference_initial_condition(std::string_view name, GridSpec const &grid, ModelParams const &model,
                                        std::uint64_t seed = 0);

/// Same, with the preset's own model parameters.
SystemField reference_initial_condition(std::string_view name, GridSpec const &grid, std::uint64_t seed = 0);

/// i.i.d. uniform(lo, hi) values from a 64-bit Mersenne Twister; identical across platforms.
Field uniform_random_field(GridSpec const &grid, std::uint64_t seed, double lo, double hi);

} // namespace rdpdhg
