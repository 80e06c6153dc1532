#include "rdpdhg/presets.hpp"

#include "rdpdhg/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace rdpdhg {

namespace {

constexpr double pi = std::numbers::pi;

PdhgParams solver(double tau, double delta)
{
  PdhgParams p;
  p.tau_u = tau;
  p.tau_p = tau;
  p.delta = delta;
  return p;
}

TimeSchedule fixed(double final_time, double ht)
{
  TimeSchedule s;
  s.final_time = final_time;
  s.ht0 = ht;
  return s;
}

std::vector<Preset> build_presets()
{
  std::vector<Preset> out;

  AllenCahnParams ac{0.01, 100.0};
  out.push_back({"ac-circle",
                 "Allen-Cahn, shrinking disk of radius 0.2 centered at the origin; front follows r^2 = r0^2 - 2 a t",
                 ac, Boundary::Periodic, 0.5, 100, -0.25, fixed(3.0, 1e-3), solver(0.5, 1e-7), false});
  out.push_back({"ac-two-disks",
                 "Allen-Cahn, symmetric difference of two overlapping disks of radius 0.1",
                 ac, Boundary::Periodic, 0.5, 100, 0.0, fixed(0.5, 1e-3), solver(0.5, 1e-7), false});

  out.push_back({"ch-seven-circles",
                 "Cahn-Hilliard, seven mollified disks on [0, 2pi]^2",
                 CahnHilliardParams{0.01, 1.0}, Boundary::Periodic, 2.0 * pi, 128, 0.0, fixed(30.0, 1.0 / 200.0),
                 solver(0.5, 1e-7), false});
  out.push_back({"ch-sinusoidal",
                 "Cahn-Hilliard, smooth trigonometric initial data on [0, 2pi]^2",
                 CahnHilliardParams{pi * pi / 25000.0, 1.0}, Boundary::Periodic, 2.0 * pi, 256, 0.0,
                 fixed(8.0, 1.0 / 3000.0), solver(0.5, 1e-7), false});
  out.push_back({"ch-random",
                 "Cahn-Hilliard, i.i.d. uniform(-0.05, 0.05) initial data on [0, 1]^2",
                 CahnHilliardParams{1e-4, 1.0}, Boundary::Periodic, 1.0, 128, 0.0, fixed(1.0, 1e-5),
                 solver(0.75, 1e-7), true});

  out.push_back({"sixth-order",
                 "Functionalized Cahn-Hilliard (sixth order), eps = 0.18 on [0, 2pi]^2",
                 SixthOrderParams{0.18}, Boundary::Periodic, 2.0 * pi, 128, 0.0, fixed(20.0, 1e-3),
                 solver(0.58, 0.5e-5), false});

  out.push_back({"schnakenberg",
                 "Schnakenberg system, Gaussian bump on the uniform equilibrium, Neumann on [0, 1]^2",
                 SchnakenbergParams{}, Boundary::Neumann, 1.0, 128, 0.0, fixed(2.0, 1.0 / 5000.0),
                 solver(0.9, 1e-7), false});

  TimeSchedule wd;
  wd.final_time = 1.0;
  wd.ht0 = 1.0 / 500.0;
  wd.adaptive = true;
  wd.eta = 0.75;
  wd.n_star_hi = 100;
  wd.n_star_lo = 20;
  out.push_back({"wolf-deer",
                 "Predator-prey system with nonlocal quadratic interaction, Neumann on [-3, 3]^2, adaptive h_t",
                 WolfDeerParams{}, Boundary::Neumann, 6.0, 128, -3.0, wd, solver(0.95, 5e-6), false});
  return out;
}

std::vector<Preset> const &all_presets()
{
  static std::vector<Preset> const presets = build_presets();
  return presets;
}

double indicator(bool inside) { return inside ? 1.0 : 0.0; }

double mollifier(double s)
{
  constexpr double eps = 0.1;
  return s < 0.0 ? 2.0 * std::exp(-eps * eps / (s * s)) : 0.0;
}

SystemField single(Field f) { return SystemField({std::move(f)}); }

template <typename P>
P const &params_of(ModelParams const &model, std::string_view name)
{
  if (auto const *p = std::get_if<P>(&model)) { return *p; }
  throw ValidationError("model", "initial condition '" + std::string(name) + "' needs " +
                                   std::string(model_kind_name(P{})) + " parameters");
}

} // namespace

std::vector<std::string> const &preset_names()
{
  static std::vector<std::string> const names = [] {
    std::vector<std::string> v;
    for (auto const &p : all_presets()) { v.push_back(p.name); }
    return v;
  }();
  return names;
}

Preset const &find_preset(std::string_view name)
{
  for (auto const &p : all_presets()) {
    if (p.name == name) { return p; }
  }
  std::string valid;
  for (auto const &n : preset_names()) { valid += (valid.empty() ? "" : ", ") + n; }
  throw ValidationError("preset", "unknown preset '" + std::string(name) + "' (valid: " + valid + ")");
}

Field uniform_random_field(GridSpec const &grid, std::uint64_t seed, double lo, double hi)
{
  std::mt19937_64 gen(seed);
  Field f(grid);
  for (auto &v : f.values()) {
    double const unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    v = lo + (hi - lo) * unit;
  }
  return f;
}

SystemField reference_initial_condition(std::string_view name, GridSpec const &grid, ModelParams const &model,
                                        std::uint64_t seed)
{
  if (name == "ac-circle") {
    return single(sample(grid, [](double x, double y) { return 2.0 * indicator(x * x + y * y < 0.04) - 1.0; }));
  }
  if (name == "ac-two-disks") {
    return single(sample(grid, [](double x, double y) {
      auto in = [&](double cx) { return (x - cx) * (x - cx) + (y - 0.25) * (y - 0.25) < 0.01; };
      return 2.0 * indicator(in(0.2) != in(0.3)) - 1.0;
    }));
  }
  if (name == "ch-seven-circles") {
    struct Circle
    {
      double x, y, r;
    };
    static constexpr Circle circles[] = {
      {pi / 2, pi / 2, pi / 5},   {pi / 4, 3 * pi / 4, 2 * pi / 15}, {pi / 2, 5 * pi / 4, pi / 15},
      {pi, pi / 4, pi / 10},      {3 * pi / 2, pi / 4, pi / 10},     {pi, pi, pi / 4},
      {3 * pi / 2, 3 * pi / 2, pi / 4},
    };
    return single(sample(grid, [](double x, double y) {
      double u = -1.0;
      for (auto const &c : circles) { u += mollifier(std::hypot(x - c.x, y - c.y) - c.r); }
      return u;
    }));
  }
  if (name == "ch-sinusoidal") {
    return single(sample(grid, [](double x, double y) {
      double const c = std::cos(4 * x) * std::cos(3 * y);
      return 0.05 * (std::cos(3 * x) * std::cos(4 * y) + c * c + std::cos(x - 5 * y) * std::cos(2 * x - y));
    }));
  }
  if (name == "ch-random") { return single(uniform_random_field(grid, seed, -0.05, 0.05)); }
  if (name == "sixth-order") {
    return single(sample(grid, [](double x, double y) {
      double const s = std::sin(x) + std::sin(y);
      return 2.0 * std::exp(s - 2.0) + 2.2 * std::exp(-s - 2.0) - 1.0;
    }));
  }
  if (name == "schnakenberg") {
    auto const &p = params_of<SchnakenbergParams>(model, name);
    double const ab = p.a + p.b;
    Field u = sample(grid, [ab](double x, double y) {
      double const dx = x - 1.0 / 3.0;
      double const dy = y - 0.5;
      return ab + 1e-3 * std::exp(-100.0 * (dx * dx + dy * dy));
    });
    Field v(grid, p.b / (ab * ab));
    return SystemField({std::move(u), std::move(v)});
  }
  if (name == "wolf-deer") {
    auto bump = [&](double mx, double my) {
      return sample(grid, [mx, my](double x, double y) {
        constexpr double r2 = 1.0;
        constexpr double eps = 0.1;
        double const d2 = (x - mx) * (x - mx) + (y - my) * (y - my);
        return (pi / 2 + std::atan((r2 - d2) / eps)) / pi;
      });
    };
    return SystemField({bump(1.5, 1.5), bump(-1.5, -1.5)});
  }
  (void)find_preset(name);
  throw ValidationError("preset", "no initial condition for '" + std::string(name) + "'");
}

SystemField reference_initial_condition(std::string_view name, GridSpec const &grid, std::uint64_t seed)
{
  return reference_initial_condition(name, grid, find_preset(name).model, seed);
}

} // namespace rdpdhg
