#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace rdpdhg {

enum class Boundary
{
  Periodic,
  Neumann
};

std::string_view to_string(Boundary bc);
Boundary parse_boundary(std::string_view name);

/// Square N x N grid on [origin, origin + L]^2.
///
/// Periodic grids exclude the duplicate boundary node (h = L / N); Neumann
/// grids put nodes on both boundaries (h = L / (N - 1)). Node (i, j) sits at
/// x = origin + j h, y = origin + i h and is stored at i * N + j.
class GridSpec
{
public:
  static GridSpec periodic(double side_length, int n, double origin = 0.0);
  static GridSpec neumann(double side_length, int n, double origin = 0.0);
  static GridSpec make(Boundary bc, double side_length, int n, double origin = 0.0);

  double side_length() const noexcept { return side_length_; }
  int n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  Boundary bc() const noexcept { return bc_; }
  double origin() const noexcept { return origin_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }

  double x(int j) const noexcept { return origin_ + j * h_; }
  double y(int i) const noexcept { return origin_ + i * h_; }

  std::size_t linear_index(int i, int j) const noexcept;
  std::pair<int, int> unindex(std::size_t l) const noexcept;

  /// Closest node to a physical point, clamped to the grid.
  std::pair<int, int> nearest_node(double x, double y) const noexcept;

  bool operator==(GridSpec const &) const = default;

private:
  GridSpec(Boundary bc, double side_length, int n, double origin);

  double side_length_;
  int n_;
  double h_;
  Boundary bc_;
  double origin_;
};

/// Scalar grid function: one value per node, row-major.
class Field
{
public:
  explicit Field(GridSpec const &spec, double value = 0.0);
  Field(GridSpec const &spec, std::vector<double> data);

  GridSpec const &spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return data_.size(); }

  double &operator()(int i, int j) noexcept { return data_[spec_.linear_index(i, j)]; }
  double operator()(int i, int j) const noexcept { return data_[spec_.linear_index(i, j)]; }
  double &operator[](std::size_t l) noexcept { return data_[l]; }
  double operator[](std::size_t l) const noexcept { return data_[l]; }

  std::span<double> values() noexcept { return data_; }
  std::span<double const> values() const noexcept { return data_; }
  std::vector<double> const &data() const noexcept { return data_; }

  Field &operator+=(Field const &other);
  Field &operator-=(Field const &other);
  Field &operator*=(double s) noexcept;

  /// this += s * other
  Field &axpy(double s, Field const &other);

  bool all_finite() const noexcept;

private:
  GridSpec spec_;
  std::vector<double> data_;
};

Field operator+(Field a, Field const &b);
Field operator-(Field a, Field const &b);
Field operator*(double s, Field a);

/// Ordered list of scalar fields on one grid, e.g. (U, V) of a two-species system.
class SystemField
{
public:
  SystemField() = default;
  explicit SystemField(std::vector<Field> components);
  SystemField(GridSpec const &spec, int n_components, double value = 0.0);

  int n_components() const noexcept { return static_cast<int>(components_.size()); }
  GridSpec const &spec() const { return components_.front().spec(); }

  Field &operator[](int c) { return components_[static_cast<std::size_t>(c)]; }
  Field const &operator[](int c) const { return components_[static_cast<std::size_t>(c)]; }

  std::vector<Field> &components() noexcept { return components_; }
  std::vector<Field> const &components() const noexcept { return components_; }

  bool all_finite() const noexcept;

private:
  std::vector<Field> components_;
};

/// Samples f(x, y) at every node; throws if f is non-finite anywhere.
Field sample(GridSpec const &spec, std::function<double(double, double)> const &f);

double l2_norm(Field const &v) noexcept;
double dot(Field const &a, Field const &b);
double max_abs(Field const &v) noexcept;

/// h^2 * sum of entries.
double total_mass(Field const &v) noexcept;

/// Sum of per-component Euclidean norms.
double l2_norm_sum(SystemField const &v) noexcept;
double dot(SystemField const &a, SystemField const &b);

} // namespace rdpdhg
