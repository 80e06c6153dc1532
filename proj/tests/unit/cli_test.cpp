#include <doctest.h>

#include <rdpdhg/error.hpp>
#include <rdpdhg/presets.hpp>
#include <rdpdhg_cli/commands.hpp>
#include <rdpdhg_cli/config.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace rdpdhg;
using namespace rdpdhg::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string error_field(json const &doc)
{
  try {
    (void)parse_config(doc);
  } catch (ValidationError const &e) {
    return e.field();
  }
  return {};
}

struct TempDir
{
  fs::path path;
  TempDir()
  {
    path = fs::temp_directory_path() / ("rdpdhg-cli-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_json(fs::path const &dir, json const &doc)
{
  auto const p = dir / "config.json";
  std::ofstream(p) << doc.dump(2);
  return p;
}

std::vector<std::vector<std::string>> read_rows(fs::path const &p)
{
  std::ifstream is(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) { cells.push_back(cell); }
    rows.push_back(cells);
  }
  return rows;
}

json small_ch_run(fs::path const &out)
{
  return {
    {"preset", "ch-random"},
    {"grid", {{"n", 16}}},
    {"schedule", {{"final_time", 5e-5}}},
    {"trace_steps", {1, 5}},
    {"output_dir", out.string()},
    {"seed", 7},
  };
}

} // namespace

TEST_CASE("bad values name the dotted field")
{
  CHECK(error_field({{"preset", "ac-circle"}, {"pdhg", {{"tau_u", -1.0}}}}) == "pdhg.tau_u");
  CHECK(error_field({{"preset", "ac-circle"}, {"schedule", {{"final_time", 0.0}}}}) == "schedule.final_time");
  CHECK(error_field({{"preset", "ac-circle"}, {"grid", {{"n", 1}}}}) == "grid.n");
  CHECK(error_field({{"preset", "ac-circle"}, {"grid", {{"bc", "dirichlet"}}}}) == "grid.bc");
  CHECK(error_field({{"preset", "ac-circle"}, {"model", {{"a", -2.0}}}}) == "model.a");
  CHECK(error_field({{"preset", "ac-circle"}, {"pdhg", {{"delta", "small"}}}}) == "pdhg.delta");
  CHECK(error_field({{"preset", "nope"}}) == "preset");
  CHECK(error_field(json::object()) == "preset");
  CHECK(error_field({{"preset", "custom"}, {"initial_condition", "ac-circle"}}) == "model");
  CHECK(error_field({{"preset", "custom"}, {"initial_condition", "ac-circle"}, {"model", {{"kind", "heat"}}}}) ==
        "model.kind");
}

TEST_CASE("unknown keys are rejected at every level")
{
  CHECK_FALSE(error_field({{"preset", "ac-circle"}, {"bogus", 1}}).empty());
  CHECK_FALSE(error_field({{"preset", "ac-circle"}, {"pdhg", {{"tau", 0.5}}}}).empty());
  CHECK_FALSE(error_field({{"preset", "ac-circle"}, {"grid", {{"nx", 8}}}}).empty());
  CHECK_FALSE(error_field({{"preset", "ac-circle"}, {"model", {{"epsilon", 0.1}}}}).empty());
}

TEST_CASE("overrides apply on top of the preset")
{
  auto const cfg = parse_config({{"preset", "ac-circle"}, {"pdhg", {{"tau_u", 0.25}}}, {"grid", {{"n", 50}}}});
  CHECK(cfg.pdhg.tau_u == 0.25);
  CHECK(cfg.pdhg.tau_p == 0.5);
  CHECK(cfg.n == 50);
  CHECK(cfg.side_length == 0.5);
  CHECK(cfg.origin == -0.25);
  CHECK(cfg.initial_condition == "ac-circle");
  CHECK(cfg.snapshot_times == default_snapshot_times(3.0));
  CHECK(cfg.snapshot_times.size() == 12);
}

TEST_CASE("preset configs round trip")
{
  for (auto const &name : preset_names()) {
    CAPTURE(name);
    auto const doc = preset_config(name);
    auto const cfg = parse_config(doc);
    auto const &p = find_preset(name);
    CHECK(cfg.preset == name);
    CHECK(cfg.n == p.n);
    CHECK(cfg.bc == p.bc);
    CHECK(cfg.side_length == p.side_length);
    CHECK(cfg.schedule.final_time == p.schedule.final_time);
    CHECK(cfg.schedule.ht0 == p.schedule.ht0);
    CHECK(cfg.schedule.adaptive == p.schedule.adaptive);
    CHECK(cfg.pdhg.tau_u == p.pdhg.tau_u);
    CHECK(cfg.pdhg.delta == p.pdhg.delta);
    CHECK(model_to_json(cfg.model) == model_to_json(p.model));
    CHECK(parse_config(json::parse(doc.dump())).pdhg.max_iters == p.pdhg.max_iters);
  }
}

TEST_CASE("theory and preset commands")
{
  std::ostringstream out;
  std::ostringstream err;
  CHECK(theory_command({}, out, err) == kValidation);
  CHECK(err.str().find("usage") != std::string::npos);
  CHECK(theory_command({0.5}, out, err) == kValidation);
  out.str("");
  CHECK(theory_command({100.0}, out, err) == kSuccess);
  CHECK(out.str().find("0.99993333") != std::string::npos);

  std::ostringstream list;
  CHECK(presets_command(list) == kSuccess);
  for (auto const &name : preset_names()) { CHECK(list.str().find(name) != std::string::npos); }
  std::ostringstream cfg;
  CHECK(preset_config_command("wolf-deer", cfg, err) == kSuccess);
  CHECK(parse_config(json::parse(cfg.str())).preset == "wolf-deer");
  CHECK(preset_config_command("none", cfg, err) == kValidation);
}

TEST_CASE("run command writes consistent outputs")
{
  TempDir tmp;
  auto const out_dir = tmp.path / "out";
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(run_command(write_json(tmp.path, small_ch_run(out_dir)), out, err) == kSuccess);

  auto const rows = read_rows(out_dir / "trace.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"step", "time", "h_t", "pdhg_iters", "final_residual"});
  long long iter_sum = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) { iter_sum += std::stoll(rows[k][3]); }

  std::ifstream is(out_dir / "summary.json");
  auto const summary = json::parse(is);
  CHECK(summary["total_steps"] == 5);
  CHECK(summary["total_pdhg_iters"].get<long long>() == iter_sum);
  CHECK(summary["seed"] == 7);
  CHECK(summary["preset"] == "ch-random");
  CHECK(std::abs(summary["mass_drift"][0].get<double>()) < 1e-12);
  CHECK(summary["final_time"].get<double>() == doctest::Approx(5e-5));

  CHECK(fs::exists(out_dir / "snapshots" / "index.csv"));
  CHECK(fs::exists(out_dir / "snapshots" / "snapshot_000_u.csv"));
  CHECK(fs::exists(out_dir / "snapshots" / "snapshot_000.bin"));
  CHECK(fs::exists(out_dir / "iterations" / "step_000001.csv"));
  CHECK(fs::exists(out_dir / "iterations" / "step_000005.csv"));
  CHECK(fs::exists(out_dir / "energy.csv"));
  CHECK(read_rows(out_dir / "iterations" / "step_000001.csv").size() == std::stoull(rows[1][3]) + 2);
}

TEST_CASE("run command exit codes")
{
  TempDir tmp;
  std::ostringstream out;
  std::ostringstream err;
  CHECK(run_command(tmp.path / "missing.json", out, err) == kIo);

  {
    std::ofstream(tmp.path / "broken.json") << "{ not json";
  }
  CHECK(run_command(tmp.path / "broken.json", out, err) == kValidation);

  auto bad = small_ch_run(tmp.path / "o");
  bad["pdhg"] = {{"tau_u", -1.0}};
  err.str("");
  CHECK(run_command(write_json(tmp.path, bad), out, err) == kValidation);
  CHECK(err.str().find("pdhg.tau_u") != std::string::npos);

  auto failing = small_ch_run(tmp.path / "fail");
  failing["pdhg"] = {{"max_iters", 1}};
  CHECK(run_command(write_json(tmp.path, failing), out, err) == kSolverFailure);
  CHECK(fs::exists(tmp.path / "fail" / "failed_step_trace.csv"));
}
