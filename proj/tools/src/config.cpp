#include "rdpdhg_cli/config.hpp"

#include <rdpdhg/error.hpp>
#include <rdpdhg/presets.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>

namespace rdpdhg::cli {

using nlohmann::json;

namespace {

std::string join(std::string const &prefix, std::string const &key)
{
  return prefix.empty() ? key : prefix + "." + key;
}

void require_object(json const &j, std::string const &path)
{
  if (!j.is_object()) { throw ValidationError(path.empty() ? "config" : path, "must be an object"); }
}

void check_keys(json const &j, std::string const &path, std::initializer_list<char const *> allowed)
{
  require_object(j, path);
  for (auto const &[key, value] : j.items()) {
    (void)value;
    bool const known = std::any_of(allowed.begin(), allowed.end(), [&](char const *a) { return key == a; });
    if (!known) { throw ValidationError(join(path, key), "unknown key"); }
  }
}

void read(json const &j, std::string const &path, char const *key, double &dst)
{
  if (!j.contains(key)) { return; }
  auto const &v = j.at(key);
  if (!v.is_number()) { throw ValidationError(join(path, key), "must be a number"); }
  dst = v.get<double>();
}

void read(json const &j, std::string const &path, char const *key, int &dst)
{
  if (!j.contains(key)) { return; }
  auto const &v = j.at(key);
  if (!v.is_number_integer()) { throw ValidationError(join(path, key), "must be an integer"); }
  auto const x = v.get<std::int64_t>();
  if (x < -(1LL << 31) || x >= (1LL << 31)) { throw ValidationError(join(path, key), "out of range"); }
  dst = static_cast<int>(x);
}

void read(json const &j, std::string const &path, char const *key, bool &dst)
{
  if (!j.contains(key)) { return; }
  auto const &v = j.at(key);
  if (!v.is_boolean()) { throw ValidationError(join(path, key), "must be true or false"); }
  dst = v.get<bool>();
}

void read(json const &j, std::string const &path, char const *key, std::string &dst)
{
  if (!j.contains(key)) { return; }
  auto const &v = j.at(key);
  if (!v.is_string()) { throw ValidationError(join(path, key), "must be a string"); }
  dst = v.get<std::string>();
}

ModelParams default_model(std::string const &kind)
{
  if (kind == "allen-cahn") { return AllenCahnParams{}; }
  if (kind == "cahn-hilliard") { return CahnHilliardParams{}; }
  if (kind == "sixth-order") { return SixthOrderParams{}; }
  if (kind == "schnakenberg") { return SchnakenbergParams{}; }
  if (kind == "wolf-deer") { return WolfDeerParams{}; }
  throw ValidationError("model.kind", "unknown model '" + kind +
                                        "' (valid: allen-cahn, cahn-hilliard, sixth-order, schnakenberg, wolf-deer)");
}

ModelParams parse_model(json const &j, ModelParams base)
{
  std::string const path = "model";
  require_object(j, path);
  std::string kind(model_kind_name(base));
  read(j, path, "kind", kind);
  if (kind != model_kind_name(base)) { base = default_model(kind); }

  struct Visitor
  {
    json const &j;
    std::string const &path;
    void operator()(AllenCahnParams &p) const
    {
      check_keys(j, path, {"kind", "a", "b"});
      read(j, path, "a", p.a);
      read(j, path, "b", p.b);
    }
    void operator()(CahnHilliardParams &p) const
    {
      check_keys(j, path, {"kind", "a", "b"});
      read(j, path, "a", p.a);
      read(j, path, "b", p.b);
    }
    void operator()(SixthOrderParams &p) const
    {
      check_keys(j, path, {"kind", "epsilon"});
      read(j, path, "epsilon", p.epsilon);
    }
    void operator()(SchnakenbergParams &p) const
    {
      check_keys(j, path, {"kind", "kappa", "a", "b", "d1", "d2"});
      read(j, path, "kappa", p.kappa);
      read(j, path, "a", p.a);
      read(j, path, "b", p.b);
      read(j, path, "d1", p.d1);
      read(j, path, "d2", p.d2);
    }
    void operator()(WolfDeerParams &p) const
    {
      check_keys(j, path, {"kind", "d", "a", "b", "c", "nonlocal_drift", "copy_boundary_flux"});
      read(j, path, "d", p.d);
      read(j, path, "a", p.a);
      read(j, path, "b", p.b);
      read(j, path, "c", p.c);
      read(j, path, "nonlocal_drift", p.nonlocal_drift);
      read(j, path, "copy_boundary_flux", p.copy_boundary_flux);
    }
  };
  std::visit(Visitor{j, path}, base);
  std::visit([&](auto const &p) {
    try {
      p.validate();
    } catch (ValidationError const &e) {
      throw ValidationError("model." + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
  }, base);
  return base;
}

template <typename T>
void rethrow_prefixed(std::string const &prefix, T const &fn)
{
  try {
    fn();
  } catch (ValidationError const &e) {
    throw ValidationError(prefix + "." + e.field(), std::string(e.what()).substr(e.field().size() + 2));
  }
}

} // namespace

std::vector<double> default_snapshot_times(double final_time)
{
  std::vector<double> t;
  for (int k = 0; k <= 11; ++k) { t.push_back(final_time * k / 11.0); }
  t.back() = final_time;
  return t;
}

RunConfig parse_config(json const &doc)
{
  check_keys(doc, "", {"preset", "initial_condition", "model", "grid", "schedule", "pdhg", "snapshot_times",
                       "trace_steps", "output_dir", "seed", "output"});

  RunConfig cfg;
  read(doc, "", "preset", cfg.preset);
  if (cfg.preset.empty()) { throw ValidationError("preset", "is required (a preset name or \"custom\")"); }

  bool const custom = cfg.preset == "custom";
  if (!custom) {
    auto const &p = find_preset(cfg.preset);
    cfg.initial_condition = p.name;
    cfg.model = p.model;
    cfg.bc = p.bc;
    cfg.side_length = p.side_length;
    cfg.n = p.n;
    cfg.origin = p.origin;
    cfg.schedule = p.schedule;
    cfg.pdhg = p.pdhg;
  } else {
    if (!doc.contains("model")) { throw ValidationError("model", "is required for custom runs"); }
    if (!doc.contains("initial_condition")) {
      throw ValidationError("initial_condition", "is required for custom runs");
    }
  }

  read(doc, "", "initial_condition", cfg.initial_condition);
  (void)find_preset(cfg.initial_condition);

  if (doc.contains("model")) {
    auto const &m = doc.at("model");
    ModelParams base = cfg.model;
    if (custom) {
      if (!m.is_object() || !m.contains("kind")) { throw ValidationError("model.kind", "is required for custom runs"); }
      base = default_model(m.at("kind").is_string() ? m.at("kind").get<std::string>() : std::string{});
    }
    cfg.model = parse_model(m, base);
  }

  if (doc.contains("grid")) {
    auto const &g = doc.at("grid");
    check_keys(g, "grid", {"bc", "side_length", "n", "origin"});
    std::string bc(to_string(cfg.bc));
    read(g, "grid", "bc", bc);
    try {
      cfg.bc = parse_boundary(bc);
    } catch (Error const &) {
      throw ValidationError("grid.bc", "must be \"periodic\" or \"neumann\"");
    }
    read(g, "grid", "side_length", cfg.side_length);
    read(g, "grid", "n", cfg.n);
    read(g, "grid", "origin", cfg.origin);
  }
  rethrow_prefixed("grid", [&] { (void)cfg.grid(); });

  if (doc.contains("schedule")) {
    auto const &s = doc.at("schedule");
    check_keys(s, "schedule", {"final_time", "ht0", "adaptive", "eta", "n_star_hi", "n_star_lo"});
    read(s, "schedule", "final_time", cfg.schedule.final_time);
    read(s, "schedule", "ht0", cfg.schedule.ht0);
    read(s, "schedule", "adaptive", cfg.schedule.adaptive);
    read(s, "schedule", "eta", cfg.schedule.eta);
    read(s, "schedule", "n_star_hi", cfg.schedule.n_star_hi);
    read(s, "schedule", "n_star_lo", cfg.schedule.n_star_lo);
  }
  rethrow_prefixed("schedule", [&] { cfg.schedule.validate(); });

  if (doc.contains("pdhg")) {
    auto const &p = doc.at("pdhg");
    check_keys(p, "pdhg", {"tau_u", "tau_p", "omega", "delta", "max_iters", "divergence_factor",
                           "identity_preconditioner"});
    read(p, "pdhg", "tau_u", cfg.pdhg.tau_u);
    read(p, "pdhg", "tau_p", cfg.pdhg.tau_p);
    read(p, "pdhg", "omega", cfg.pdhg.omega);
    read(p, "pdhg", "delta", cfg.pdhg.delta);
    read(p, "pdhg", "max_iters", cfg.pdhg.max_iters);
    read(p, "pdhg", "divergence_factor", cfg.pdhg.divergence_factor);
    read(p, "pdhg", "identity_preconditioner", cfg.pdhg.identity_preconditioner);
  }
  rethrow_prefixed("pdhg", [&] { cfg.pdhg.validate(); });

  if (doc.contains("snapshot_times")) {
    auto const &s = doc.at("snapshot_times");
    if (!s.is_array()) { throw ValidationError("snapshot_times", "must be an array of numbers"); }
    for (auto const &v : s) {
      if (!v.is_number()) { throw ValidationError("snapshot_times", "must be an array of numbers"); }
      double const t = v.get<double>();
      if (!(t >= 0.0 && t <= cfg.schedule.final_time)) {
        throw ValidationError("snapshot_times", "entries must lie in [0, final_time]");
      }
      cfg.snapshot_times.push_back(t);
    }
  } else {
    cfg.snapshot_times = default_snapshot_times(cfg.schedule.final_time);
  }

  if (doc.contains("trace_steps")) {
    auto const &s = doc.at("trace_steps");
    if (!s.is_array()) { throw ValidationError("trace_steps", "must be an array of step numbers"); }
    for (auto const &v : s) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw ValidationError("trace_steps", "entries must be positive integers");
      }
      cfg.trace_steps.push_back(static_cast<int>(v.get<std::int64_t>()));
    }
  }

  std::string dir = cfg.output_dir.string();
  read(doc, "", "output_dir", dir);
  if (dir.empty()) { throw ValidationError("output_dir", "must not be empty"); }
  cfg.output_dir = dir;

  if (doc.contains("seed")) {
    auto const &s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ValidationError("seed", "must be a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }

  if (doc.contains("output")) {
    auto const &o = doc.at("output");
    check_keys(o, "output", {"csv", "binary"});
    read(o, "output", "csv", cfg.write_csv);
    read(o, "output", "binary", cfg.write_binary);
  }

  return cfg;
}

RunConfig load_config(std::filesystem::path const &path)
{
  std::ifstream is(path);
  if (!is) { throw IoError("cannot open config '" + path.string() + "'"); }
  json doc;
  try {
    doc = json::parse(is);
  } catch (json::parse_error const &e) {
    throw ValidationError("config", std::string("parse error: ") + e.what());
  }
  return parse_config(doc);
}

json model_to_json(ModelParams const &model)
{
  struct Visitor
  {
    json operator()(AllenCahnParams const &p) const { return {{"kind", "allen-cahn"}, {"a", p.a}, {"b", p.b}}; }
    json operator()(CahnHilliardParams const &p) const
    {
      return {{"kind", "cahn-hilliard"}, {"a", p.a}, {"b", p.b}};
    }
    json operator()(SixthOrderParams const &p) const { return {{"kind", "sixth-order"}, {"epsilon", p.epsilon}}; }
    json operator()(SchnakenbergParams const &p) const
    {
      return {{"kind", "schnakenberg"}, {"kappa", p.kappa}, {"a", p.a}, {"b", p.b}, {"d1", p.d1}, {"d2", p.d2}};
    }
    json operator()(WolfDeerParams const &p) const
    {
      return {{"kind", "wolf-deer"}, {"d", p.d},   {"a", p.a},
              {"b", p.b},            {"c", p.c},   {"nonlocal_drift", p.nonlocal_drift},
              {"copy_boundary_flux", p.copy_boundary_flux}};
    }
  };
  return std::visit(Visitor{}, model);
}

json preset_config(std::string const &name)
{
  auto const &p = find_preset(name);
  json doc;
  doc["preset"] = p.name;
  doc["model"] = model_to_json(p.model);
  doc["grid"] = {{"bc", std::string(to_string(p.bc))}, {"side_length", p.side_length}, {"n", p.n},
                 {"origin", p.origin}};
  doc["schedule"] = {{"final_time", p.schedule.final_time}, {"ht0", p.schedule.ht0},
                     {"adaptive", p.schedule.adaptive},     {"eta", p.schedule.eta},
                     {"n_star_hi", p.schedule.n_star_hi},   {"n_star_lo", p.schedule.n_star_lo}};
  doc["pdhg"] = {{"tau_u", p.pdhg.tau_u},
                 {"tau_p", p.pdhg.tau_p},
                 {"omega", p.pdhg.omega},
                 {"delta", p.pdhg.delta},
                 {"max_iters", p.pdhg.max_iters},
                 {"divergence_factor", p.pdhg.divergence_factor},
                 {"identity_preconditioner", p.pdhg.identity_preconditioner}};
  doc["seed"] = 0;
  doc["output_dir"] = p.name + "-out";
  return doc;
}

} // namespace rdpdhg::cli
