#pragma once

#include "rdpdhg/error.hpp"
#include "rdpdhg/grid.hpp"
#include "rdpdhg/stepper.hpp"

#include <filesystem>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace rdpdhg {

/// The zero level set no longer crosses the probe ray.
class FrontVanished : public Error
{
public:
  FrontVanished()
    : Error("front vanished")
  {
  }
};

/// Distance from `center` to the first sign change of U along the +x ray
/// through the node nearest to `center`, linearly interpolated between nodes.
/// Throws FrontVanished if the ray has no sign change.
double zero_level_radius(Field const &u, double center_x, double center_y);

struct FrontSeries
{
  std::vector<double> times;
  std::vector<double> radii;
  /// dr/dt: central differences inside, one-sided at the ends.
  std::vector<double> speeds;
};

FrontSeries make_front_series(std::vector<double> times, std::vector<double> radii);

/// (t_k, t_{k+1}) for the first consecutive pair whose values change sign.
/// Throws Error("no sign crossing") when there is none.
std::pair<double, double> sign_crossing_time(std::span<double const> times, std::span<double const> values);

/// Same, over the snapshots of a run, probing the node nearest to (x, y) of component 0.
std::pair<double, double> sign_crossing_time(RunReport const &report, double x, double y);

/// h^2 sum [ a/2 |grad U|^2 + b W(U) ] with forward differences and W(u) = (u^2 - 1)^2 / 4.
double discrete_energy(Field const &u, double a, double b);

void write_front_csv(std::ostream &os, FrontSeries const &series);
void write_front_csv(std::filesystem::path const &path, FrontSeries const &series);

void write_energy_csv(std::ostream &os, std::span<double const> times, std::span<double const> energies,
                      std::span<double const> masses);
void write_energy_csv(std::filesystem::path const &path, std::span<double const> times,
                      std::span<double const> energies, std::span<double const> masses);

} // namespace rdpdhg
