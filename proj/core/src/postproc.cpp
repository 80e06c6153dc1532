#include "rdpdhg/postproc.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace rdpdhg {

double zero_level_radius(Field const &u, double center_x, double center_y)
{
  auto const &spec = u.spec();
  int const n = spec.n();
  auto const [i0, j0] = spec.nearest_node(center_x, center_y);
  bool const wrap = spec.bc() == Boundary::Periodic;
  int const steps = wrap ? n - 1 : n - 1 - j0;
  double const h = spec.h();
  double const x0 = spec.x(j0) - center_x;

  auto value = [&](int k) { return u(i0, (j0 + k) % n); };
  double prev = value(0);
  if (prev == 0.0) { return std::abs(x0); }
  for (int k = 1; k <= steps; ++k) {
    double const cur = value(k);
    if (cur == 0.0) { return x0 + k * h; }
    if ((prev < 0.0) != (cur < 0.0)) {
      double const frac = prev / (prev - cur);
      return x0 + (k - 1 + frac) * h;
    }
    prev = cur;
  }
  throw FrontVanished();
}

FrontSeries make_front_series(std::vector<double> times, std::vector<double> radii)
{
  if (times.size() != radii.size()) { throw ValidationError("radii", "length must match times"); }
  FrontSeries s{std::move(times), std::move(radii), {}};
  std::size_t const m = s.times.size();
  s.speeds.assign(m, 0.0);
  if (m < 2) { return s; }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t const lo = k == 0 ? 0 : k - 1;
    std::size_t const hi = k + 1 == m ? k : k + 1;
    s.speeds[k] = (s.radii[hi] - s.radii[lo]) / (s.times[hi] - s.times[lo]);
  }
  return s;
}

std::pair<double, double> sign_crossing_time(std::span<double const> times, std::span<double const> values)
{
  if (times.size() != values.size()) { throw ValidationError("values", "length must match times"); }
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    double const a = values[k];
    double const b = values[k + 1];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) { return {times[k], times[k + 1]}; }
  }
  throw Error("no sign crossing");
}

std::pair<double, double> sign_crossing_time(RunReport const &report, double x, double y)
{
  std::vector<double> times;
  std::vector<double> values;
  for (auto const &snap : report.snapshots) {
    auto const &f = snap.u[0];
    auto const [i, j] = f.spec().nearest_node(x, y);
    times.push_back(snap.time);
    values.push_back(f(i, j));
  }
  return sign_crossing_time(times, values);
}

double discrete_energy(Field const &u, double a, double b)
{
  auto const &spec = u.spec();
  int const n = spec.n();
  double const h = spec.h();
  bool const periodic = spec.bc() == Boundary::Periodic;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double const v = u(i, j);
      double dx = 0.0;
      double dy = 0.0;
      if (j + 1 < n) {
        dx = (u(i, j + 1) - v) / h;
      } else if (periodic) {
        dx = (u(i, 0) - v) / h;
      }
      if (i + 1 < n) {
        dy = (u(i + 1, j) - v) / h;
      } else if (periodic) {
        dy = (u(0, j) - v) / h;
      }
      double const w = v * v - 1.0;
      sum += 0.5 * a * (dx * dx + dy * dy) + b * 0.25 * w * w;
    }
  }
  return h * h * sum;
}

namespace {

std::ofstream open_csv(std::filesystem::path const &path)
{
  std::ofstream os(path);
  if (!os) { throw IoError("cannot open '" + path.string() + "' for writing"); }
  return os;
}

} // namespace

void write_front_csv(std::ostream &os, FrontSeries const &series)
{
  os << "time,radius,speed\n" << std::setprecision(17);
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    os << series.times[k] << ',' << series.radii[k] << ',' << series.speeds[k] << '\n';
  }
  if (!os) { throw IoError("failed writing front CSV"); }
}

void write_front_csv(std::filesystem::path const &path, FrontSeries const &series)
{
  auto os = open_csv(path);
  write_front_csv(os, series);
}

void write_energy_csv(std::ostream &os, std::span<double const> times, std::span<double const> energies,
                      std::span<double const> masses)
{
  if (energies.size() != times.size() || masses.size() != times.size()) {
    throw ValidationError("energies", "series lengths must match");
  }
  os << "time,energy,mass\n" << std::setprecision(17);
  for (std::size_t k = 0; k < times.size(); ++k) { os << times[k] << ',' << energies[k] << ',' << masses[k] << '\n'; }
  if (!os) { throw IoError("failed writing energy CSV"); }
}

void write_energy_csv(std::filesystem::path const &path, std::span<double const> times,
                      std::span<double const> energies, std::span<double const> masses)
{
  auto os = open_csv(path);
  write_energy_csv(os, times, energies, masses);
}

} // namespace rdpdhg
