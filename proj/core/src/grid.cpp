#include "rdpdhg/grid.hpp"

#include "rdpdhg/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace rdpdhg {

std::string_view to_string(Boundary bc)
{
  return bc == Boundary::Periodic ? "periodic" : "neumann";
}

Boundary parse_boundary(std::string_view name)
{
  if (name == "periodic") { return Boundary::Periodic; }
  if (name == "neumann") { return Boundary::Neumann; }
  throw ValidationError("bc", "expected 'periodic' or 'neumann', got '" + std::string(name) + "'");
}

GridSpec::GridSpec(Boundary bc, double side_length, int n, double origin)
  : side_length_(side_length)
  , n_(n)
  , h_(0.0)
  , bc_(bc)
  , origin_(origin)
{
  if (n < 2) { throw ValidationError("n", "must be at least 2"); }
  if (!(side_length > 0.0) || !std::isfinite(side_length)) {
    throw ValidationError("side_length", "must be positive and finite");
  }
  if (!std::isfinite(origin)) { throw ValidationError("origin", "must be finite"); }
  h_ = bc == Boundary::Periodic ? side_length / n : side_length / (n - 1);
}

GridSpec GridSpec::periodic(double side_length, int n, double origin)
{
  return GridSpec(Boundary::Periodic, side_length, n, origin);
}

GridSpec GridSpec::neumann(double side_length, int n, double origin)
{
  return GridSpec(Boundary::Neumann, side_length, n, origin);
}

GridSpec GridSpec::make(Boundary bc, double side_length, int n, double origin)
{
  return GridSpec(bc, side_length, n, origin);
}

std::size_t GridSpec::linear_index(int i, int j) const noexcept
{
  assert(i >= 0 && i < n_ && j >= 0 && j < n_);
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
}

std::pair<int, int> GridSpec::unindex(std::size_t l) const noexcept
{
  assert(l < size());
  auto const n = static_cast<std::size_t>(n_);
  return {static_cast<int>(l / n), static_cast<int>(l % n)};
}

std::pair<int, int> GridSpec::nearest_node(double x, double y) const noexcept
{
  auto clamp = [this](double t) {
    auto const k = static_cast<long>(std::lround((t - origin_) / h_));
    return static_cast<int>(std::clamp<long>(k, 0, n_ - 1));
  };
  return {clamp(y), clamp(x)};
}

Field::Field(GridSpec const &spec, double value)
  : spec_(spec)
  , data_(spec.size(), value)
{
}

Field::Field(GridSpec const &spec, std::vector<double> data)
  : spec_(spec)
  , data_(std::move(data))
{
  if (data_.size() != spec_.size()) {
    throw ValidationError("field", "expected " + std::to_string(spec_.size()) + " values, got " +
                                     std::to_string(data_.size()));
  }
}

namespace {
void require_same_grid(Field const &a, Field const &b)
{
  if (!(a.spec() == b.spec())) { throw Error("grid mismatch between fields"); }
}
} // namespace

Field &Field::operator+=(Field const &other)
{
  require_same_grid(*this, other);
  for (std::size_t l = 0; l < data_.size(); ++l) { data_[l] += other.data_[l]; }
  return *this;
}

Field &Field::operator-=(Field const &other)
{
  require_same_grid(*this, other);
  for (std::size_t l = 0; l < data_.size(); ++l) { data_[l] -= other.data_[l]; }
  return *this;
}

Field &Field::operator*=(double s) noexcept
{
  for (auto &v : data_) { v *= s; }
  return *this;
}

Field &Field::axpy(double s, Field const &other)
{
  require_same_grid(*this, other);
  for (std::size_t l = 0; l < data_.size(); ++l) { data_[l] += s * other.data_[l]; }
  return *this;
}

bool Field::all_finite() const noexcept
{
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Field operator+(Field a, Field const &b) { return a += b; }
Field operator-(Field a, Field const &b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

SystemField::SystemField(std::vector<Field> components)
  : components_(std::move(components))
{
  if (components_.empty()) { throw ValidationError("components", "system field needs at least one component"); }
  for (auto const &c : components_) {
    if (!(c.spec() == components_.front().spec())) {
      throw ValidationError("components", "all components must share one grid");
    }
  }
}

SystemField::SystemField(GridSpec const &spec, int n_components, double value)
{
  if (n_components < 1) { throw ValidationError("components", "need at least one component"); }
  components_.assign(static_cast<std::size_t>(n_components), Field(spec, value));
}

bool SystemField::all_finite() const noexcept
{
  return std::all_of(components_.begin(), components_.end(), [](Field const &f) { return f.all_finite(); });
}

Field sample(GridSpec const &spec, std::function<double(double, double)> const &f)
{
  Field out(spec);
  for (int i = 0; i < spec.n(); ++i) {
    for (int j = 0; j < spec.n(); ++j) {
      double const v = f(spec.x(j), spec.y(i));
      if (!std::isfinite(v)) {
        throw Error("non-finite initial value at grid point (i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                    ")");
      }
      out(i, j) = v;
    }
  }
  return out;
}

double l2_norm(Field const &v) noexcept
{
  double s = 0.0;
  for (double x : v.values()) { s += x * x; }
  return std::sqrt(s);
}

double dot(Field const &a, Field const &b)
{
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) { s += a[l] * b[l]; }
  return s;
}

double max_abs(Field const &v) noexcept
{
  double m = 0.0;
  for (double x : v.values()) { m = std::max(m, std::abs(x)); }
  return m;
}

double total_mass(Field const &v) noexcept
{
  double s = 0.0;
  for (double x : v.values()) { s += x; }
  double const h = v.spec().h();
  return h * h * s;
}

double l2_norm_sum(SystemField const &v) noexcept
{
  double s = 0.0;
  for (auto const &c : v.components()) { s += l2_norm(c); }
  return s;
}

double dot(SystemField const &a, SystemField const &b)
{
  if (a.n_components() != b.n_components()) { throw Error("component count mismatch"); }
  double s = 0.0;
  for (int c = 0; c < a.n_components(); ++c) { s += dot(a[c], b[c]); }
  return s;
}

} // namespace rdpdhg
