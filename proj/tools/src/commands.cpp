#include "rdpdhg_cli/commands.hpp"

#include "rdpdhg_cli/config.hpp"

#include <rdpdhg/error.hpp>
#include <rdpdhg/field_io.hpp>
#include <rdpdhg/postproc.hpp>
#include <rdpdhg/presets.hpp>
#include <rdpdhg/theory.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

namespace rdpdhg::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v)
{
  std::array<char, 32> buf{};
  auto const res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string padded(int value, int width)
{
  std::string s = std::to_string(value);
  return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

std::ofstream open_out(fs::path const &path)
{
  std::ofstream os(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!os) { throw IoError("cannot open '" + path.string() + "' for writing"); }
  return os;
}

void write_iteration_trace(fs::path const &path, StepTrace const &trace)
{
  auto os = open_out(path);
  os << "iteration,residual\n";
  for (std::size_t k = 0; k < trace.residual_norms.size(); ++k) {
    os << k << ',' << num(trace.residual_norms[k]) << '\n';
  }
  if (!os) { throw IoError("failed writing '" + path.string() + "'"); }
}

/// Energy parameters (a, b) for the phase-field models.
std::optional<std::pair<double, double>> energy_params(ModelParams const &model)
{
  if (auto const *p = std::get_if<AllenCahnParams>(&model)) { return std::pair{p->a, p->b}; }
  if (auto const *p = std::get_if<CahnHilliardParams>(&model)) { return std::pair{p->a, p->b}; }
  if (auto const *p = std::get_if<SixthOrderParams>(&model)) { return std::pair{p->epsilon * p->epsilon, 1.0}; }
  return std::nullopt;
}

struct Outputs
{
  fs::path dir;
  std::ofstream trace;
  std::vector<double> energy_times, energies, masses;
  std::vector<double> front_times, front_radii;
  bool front_active = false;
};

void record_diagnostics(Outputs &o, RunConfig const &cfg, double t, SystemField const &u)
{
  if (auto ep = energy_params(cfg.model)) {
    o.energy_times.push_back(t);
    o.energies.push_back(discrete_energy(u[0], ep->first, ep->second));
    o.masses.push_back(total_mass(u[0]));
  }
  if (o.front_active) {
    try {
      o.front_radii.push_back(zero_level_radius(u[0], 0.0, 0.0));
      o.front_times.push_back(t);
    } catch (FrontVanished const &) {
      o.front_active = false;
    }
  }
}

void write_snapshots(RunConfig const &cfg, RunReport const &report, EquationModel const &model, fs::path const &dir)
{
  fs::create_directories(dir / "snapshots");
  auto index = open_out(dir / "snapshots" / "index.csv");
  index << "index,requested_time,time\n";
  auto const names = model.component_names();
  for (std::size_t k = 0; k < report.snapshots.size(); ++k) {
    auto const &snap = report.snapshots[k];
    std::string const stem = "snapshot_" + padded(static_cast<int>(k), 3);
    index << k << ',' << num(snap.requested_time) << ',' << num(snap.time) << '\n';
    if (cfg.write_csv) {
      for (int c = 0; c < snap.u.n_components(); ++c) {
        io::write_csv(dir / "snapshots" / (stem + "_" + names[static_cast<std::size_t>(c)] + ".csv"), snap.u[c]);
      }
    }
    if (cfg.write_binary) { io::write_binary(dir / "snapshots" / (stem + ".bin"), snap.u); }
  }
}

} // namespace

int run_command(fs::path const &config_path, std::ostream &out, std::ostream &err)
{
  RunConfig cfg;
  std::unique_ptr<EquationModel> model;
  SystemField u0;
  try {
    cfg = load_config(config_path);
    model = make_model(cfg.model, cfg.grid());
    u0 = reference_initial_condition(cfg.initial_condition, cfg.grid(), cfg.model, cfg.seed);
    if (u0.n_components() != model->n_components()) {
      throw ValidationError("initial_condition", "'" + cfg.initial_condition + "' has " +
                                                   std::to_string(u0.n_components()) + " components, model '" +
                                                   std::string(model->name()) + "' needs " +
                                                   std::to_string(model->n_components()));
    }
  } catch (IoError const &e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (Error const &e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  Outputs o;
  o.dir = cfg.output_dir;
  try {
    fs::create_directories(o.dir);
    o.trace = open_out(o.dir / "trace.csv");
    o.trace << "step,time,h_t,pdhg_iters,final_residual\n";
  } catch (std::exception const &e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  o.front_active = cfg.initial_condition == "ac-circle";
  record_diagnostics(o, cfg, 0.0, u0);

  RunOptions options;
  options.snapshot_times = cfg.snapshot_times;
  options.trace_steps = cfg.trace_steps;
  options.seed = cfg.seed;
  options.on_step = [&](StepInfo const &s) {
    o.trace << s.step << ',' << num(s.time) << ',' << num(s.ht) << ',' << s.trace->iterations << ','
            << num(s.trace->final_residual()) << '\n';
    record_diagnostics(o, cfg, s.time, *s.u);
  };

  RunReport report;
  try {
    report = run(*model, u0, cfg.schedule, cfg.pdhg, options);
  } catch (SolverAbort const &e) {
    err << "solver failure: " << e.what() << '\n';
    try {
      o.trace.flush();
      write_iteration_trace(o.dir / "failed_step_trace.csv", e.trace());
      err << "last trace written to " << (o.dir / "failed_step_trace.csv").string() << '\n';
    } catch (std::exception const &io) {
      err << "error: " << io.what() << '\n';
    }
    return kSolverFailure;
  }

  try {
    o.trace.flush();
    if (!o.trace) { throw IoError("failed writing trace.csv"); }
    write_snapshots(cfg, report, *model, o.dir);
    if (!report.traces.empty()) {
      fs::create_directories(o.dir / "iterations");
      for (auto const &[step, trace] : report.traces) {
        write_iteration_trace(o.dir / "iterations" / ("step_" + padded(step, 6) + ".csv"), trace);
      }
    }
    if (!o.energies.empty()) { write_energy_csv(o.dir / "energy.csv", o.energy_times, o.energies, o.masses); }
    if (!o.front_times.empty()) {
      write_front_csv(o.dir / "front.csv", make_front_series(o.front_times, o.front_radii));
    }

    long long total_iters = 0;
    for (int it : report.pdhg_iters) { total_iters += it; }
    json drift = json::array();
    for (int c = 0; c < u0.n_components(); ++c) {
      drift.push_back(total_mass(report.final_state[c]) - total_mass(u0[c]));
    }
    json summary = {
      {"preset", cfg.preset},
      {"model", model_to_json(cfg.model)},
      {"final_time", report.times.back()},
      {"total_steps", report.steps()},
      {"total_pdhg_iters", total_iters},
      {"shrink_events", report.shrink_events},
      {"mass_drift", drift},
      {"min_h_t", report.ht_history.empty() ? 0.0 : *std::min_element(report.ht_history.begin(), report.ht_history.end())},
      {"wall_time", report.wall_time},
      {"seed", cfg.seed},
    };
    auto os = open_out(o.dir / "summary.json");
    os << summary.dump(2) << '\n';
    if (!os) { throw IoError("failed writing summary.json"); }
    out << "completed " << report.steps() << " steps to t=" << num(report.times.back()) << " with " << total_iters
        << " PDHG iterations; outputs in " << o.dir.string() << '\n';
  } catch (std::exception const &e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kSuccess;
}

int theory_command(std::vector<double> const &kappas, std::ostream &out, std::ostream &err)
{
  if (kappas.empty()) {
    err << "usage: rdpdhg theory KAPPA [KAPPA...]\n";
    return kValidation;
  }
  std::vector<RatePrediction> rows;
  try {
    for (double k : kappas) { rows.push_back(predict_rate(k)); }
  } catch (Error const &e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  out << std::left << std::setw(16) << "kappa" << std::setw(22) << "eta_star" << std::setw(22) << "gamma_star"
      << "tau_product_opt\n";
  out << std::setprecision(15);
  for (auto const &r : rows) {
    out << std::setw(16) << r.kappa << std::setw(22) << r.eta_star << std::setw(22) << r.gamma_star
        << r.tau_product_opt << '\n';
  }
  return kSuccess;
}

int presets_command(std::ostream &out)
{
  for (auto const &name : preset_names()) {
    auto const &p = find_preset(name);
    auto const doc = preset_config(name);
    out << name << "\n  " << p.description << "\n";
    out << "  model: " << doc["model"].dump() << "\n";
    out << "  grid: " << doc["grid"].dump() << "\n";
    out << "  schedule: " << doc["schedule"].dump() << "\n";
    out << "  pdhg: " << doc["pdhg"].dump() << "\n";
  }
  return kSuccess;
}

int preset_config_command(std::string const &name, std::ostream &out, std::ostream &err)
{
  try {
    out << preset_config(name).dump(2) << '\n';
  } catch (Error const &e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kSuccess;
}

} // namespace rdpdhg::cli
