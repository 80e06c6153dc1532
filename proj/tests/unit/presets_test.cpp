#include <doctest.h>

#include <rdpdhg/error.hpp>
#include <rdpdhg/postproc.hpp>
#include <rdpdhg/presets.hpp>

using namespace rdpdhg;

TEST_CASE("every preset is valid and has an initial condition")
{
  CHECK(preset_names().size() == 8);
  for (auto const &name : preset_names()) {
    CAPTURE(name);
    auto const &p = find_preset(name);
    CHECK(p.name == name);
    CHECK_NOTHROW(p.schedule.validate());
    CHECK_NOTHROW(p.pdhg.validate());
    CHECK(p.pdhg.tau_u == p.pdhg.tau_p);
    auto const grid = GridSpec::make(p.bc, p.side_length, 16, p.origin);
    auto const model = make_model(p.model, grid);
    auto const u0 = reference_initial_condition(name, grid, 1);
    CHECK(u0.n_components() == model->n_components());
    CHECK(u0.all_finite());
  }
}

TEST_CASE("unknown presets list the valid names")
{
  try {
    (void)find_preset("nope");
    FAIL("expected an error");
  } catch (ValidationError const &e) {
    CHECK(e.field() == "preset");
    CHECK(std::string(e.what()).find("ac-circle") != std::string::npos);
    CHECK(std::string(e.what()).find("wolf-deer") != std::string::npos);
  }
}

TEST_CASE("initial conditions read parameters from the model they are paired with")
{
  auto const grid = GridSpec::periodic(1.0, 8);
  CHECK_THROWS_AS(reference_initial_condition("schnakenberg", GridSpec::neumann(1.0, 8), AllenCahnParams{}),
                  ValidationError);
  CHECK_NOTHROW(reference_initial_condition("ac-circle", grid, AllenCahnParams{}));
}

TEST_CASE("random initial data is seeded and bounded")
{
  auto const grid = GridSpec::periodic(1.0, 32);
  auto const a = uniform_random_field(grid, 42, -0.05, 0.05);
  auto const b = uniform_random_field(grid, 42, -0.05, 0.05);
  auto const c = uniform_random_field(grid, 43, -0.05, 0.05);
  CHECK(a.data() == b.data());
  CHECK(a.data() != c.data());
  double mean = 0.0;
  for (double v : a.values()) {
    CHECK(v >= -0.05);
    CHECK(v < 0.05);
    mean += v;
  }
  CHECK(std::abs(mean / static_cast<double>(a.size())) < 0.005);
  CHECK(find_preset("ch-random").random_initial);
}

TEST_CASE("shrinking disk starts at radius 0.2")
{
  auto const &p = find_preset("ac-circle");
  auto const u0 = reference_initial_condition("ac-circle", p.grid());
  CHECK(std::abs(zero_level_radius(u0[0], 0.0, 0.0) - 0.2) <= p.grid().h());
  CHECK(p.grid().h() == doctest::Approx(1.0 / 200.0));
}

TEST_CASE("schnakenberg starts near the equilibrium")
{
  auto const &p = find_preset("schnakenberg");
  auto const grid = GridSpec::neumann(1.0, 32);
  auto const u0 = reference_initial_condition("schnakenberg", grid);
  auto const &s = std::get<SchnakenbergParams>(p.model);
  double const vs = s.b / ((s.a + s.b) * (s.a + s.b));
  CHECK(u0[1](0, 0) == doctest::Approx(vs).epsilon(0.05));
}
