#pragma once

#include "rdpdhg/grid.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace rdpdhg {

/// Coefficients of a field in the transform basis of its grid, indexed like
/// the field itself: entry (k, l) pairs row frequency k with column frequency l.
class CoefficientField
{
public:
  CoefficientField(GridSpec const &spec, std::vector<double> coeffs);

  GridSpec const &spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double operator()(int k, int l) const noexcept { return coeffs_[spec_.linear_index(k, l)]; }
  double &operator[](std::size_t m) noexcept { return coeffs_[m]; }
  double operator[](std::size_t m) const noexcept { return coeffs_[m]; }
  std::span<double const> values() const noexcept { return coeffs_; }

private:
  GridSpec spec_;
  std::vector<double> coeffs_;
};

/// Orthonormal real transform that diagonalizes the grid Laplacian:
/// a separable discrete Hartley transform for periodic grids and the
/// orthonormal DCT-II for Neumann grids. Plans are immutable, so one
/// instance may be shared between threads; scratch is allocated per call.
class SpectralTransform
{
public:
  explicit SpectralTransform(GridSpec const &spec);

  GridSpec const &spec() const noexcept { return spec_; }

  CoefficientField forward(Field const &v) const;
  Field inverse(CoefficientField const &c) const;

  /// Unnormalized in-place transforms on `values` (length n^2). A raw
  /// forward followed by a raw inverse multiplies by raw_round_trip_scale().
  void forward_raw(std::span<double> values) const;
  void inverse_raw(std::span<double> values) const;
  double raw_round_trip_scale() const noexcept;

private:
  struct Plans;
  GridSpec spec_;
  std::shared_ptr<Plans const> plans_;
  std::vector<double> forward_scale_; // per 1-D frequency
  std::vector<double> inverse_scale_;
};

/// Five-point discrete Laplacian (periodic wrap or reflected-ghost Neumann).
class LaplacianOperator
{
public:
  explicit LaplacianOperator(GridSpec const &spec);

  GridSpec const &spec() const noexcept { return spec_; }

  /// Symbol in the basis of SpectralTransform, same layout as a field.
  std::vector<double> const &eigenvalues() const noexcept { return eigenvalues_; }

  Field apply(Field const &v) const;
  void apply(std::span<double const> in, std::span<double> out) const;

private:
  GridSpec spec_;
  std::vector<double> eigenvalues_;
};

/// Eigenvalue symbol of an SPD preconditioner G that is a function of the Laplacian.
struct PrecondSymbol
{
  GridSpec spec;
  std::vector<double> g;

  /// g[m] = fn(lambda_m) over the Laplacian eigenvalues; throws if any entry is not > 0.
  static PrecondSymbol from_laplacian(LaplacianOperator const &lap, std::function<double(double)> const &fn);

  /// Throws "indefinite preconditioner" when an entry is not strictly positive.
  void validate() const;
};

/// G^{-1} r through the fast transform.
Field precond_solve(SpectralTransform const &transform, PrecondSymbol const &symbol, Field const &r);

/// Repeated G^{-1} applications with the transform normalization folded into the symbol.
class PreconditionerSolver
{
public:
  PreconditionerSolver(std::shared_ptr<SpectralTransform const> transform, PrecondSymbol const &symbol);

  Field solve(Field const &r) const;
  void solve(std::span<double const> r, std::span<double> out) const;

private:
  std::shared_ptr<SpectralTransform const> transform_;
  std::vector<double> scaled_inverse_;
};

/// (K u)_{ij} = sum_{kl} h^4/2 ((i-k)^2 + (j-l)^2) u_{kl}, evaluated as a
/// zero-padded circular convolution of the Toeplitz embedding via FFT.
class QuadraticKernelConvolution
{
public:
  explicit QuadraticKernelConvolution(GridSpec const &spec);

  GridSpec const &spec() const noexcept { return spec_; }
  Field apply(Field const &v) const;

private:
  struct Plans;
  GridSpec spec_;
  int padded_;
  std::shared_ptr<Plans const> plans_;
  std::vector<double> kernel_hat_; // interleaved complex, padded x (padded/2 + 1)
};

enum class Axis
{
  X, // along j (columns)
  Y  // along i (rows)
};

/// Values on the N + 1 half-index positions per grid line in one direction.
/// X edges are stored as i * (N + 1) + e, Y edges as e * N + j; edge e lies
/// between nodes e - 1 and e, edges 0 and N are the two boundary half-indices.
class EdgeField
{
public:
  EdgeField(Axis axis, int n, double value = 0.0);

  Axis axis() const noexcept { return axis_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  /// Edge e on grid line `line` (row i for X, column j for Y).
  double &at(int line, int e) noexcept { return data_[offset(line, e)]; }
  double at(int line, int e) const noexcept { return data_[offset(line, e)]; }
  double &operator[](std::size_t m) noexcept { return data_[m]; }
  double operator[](std::size_t m) const noexcept { return data_[m]; }
  std::span<double> values() noexcept { return data_; }
  std::span<double const> values() const noexcept { return data_; }

private:
  std::size_t offset(int line, int e) const noexcept
  {
    auto const n = static_cast<std::size_t>(n_);
    return axis_ == Axis::X ? static_cast<std::size_t>(line) * (n + 1) + static_cast<std::size_t>(e)
                            : static_cast<std::size_t>(e) * n + static_cast<std::size_t>(line);
  }

  Axis axis_;
  int n_;
  std::vector<double> data_;
};

double dot(EdgeField const &a, EdgeField const &b);

/// Forward differences at interior half-indices; the boundary half-indices
/// repeat the adjacent one-sided difference. Neumann grids only.
EdgeField gradient(GridSpec const &spec, Field const &v, Axis axis);
/// Exact transpose of gradient().
Field gradient_transpose(GridSpec const &spec, EdgeField const &e);

/// Mean of adjacent nodes at interior half-indices; boundary half-indices copy
/// the adjacent node. Neumann grids only.
EdgeField midpoint_average(GridSpec const &spec, Field const &v, Axis axis);
/// Exact transpose of midpoint_average().
Field midpoint_average_transpose(GridSpec const &spec, EdgeField const &e);

} // namespace rdpdhg
