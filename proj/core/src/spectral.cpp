#include "rdpdhg/spectral.hpp"

#include "rdpdhg/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>

namespace rdpdhg {

namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

/// fftw_malloc'd scratch: plans are created against this alignment, so every
/// execution sees the same codelets and results are bit-reproducible.
class AlignedBuffer
{
public:
  explicit AlignedBuffer(std::size_t n)
    : n_(n)
    , data_(static_cast<double *>(fftw_malloc(sizeof(double) * n)))
  {
    if (data_ == nullptr) { throw std::bad_alloc(); }
  }
  ~AlignedBuffer() { fftw_free(data_); }
  AlignedBuffer(AlignedBuffer const &) = delete;
  AlignedBuffer &operator=(AlignedBuffer const &) = delete;

  double *data() noexcept { return data_; }
  std::span<double> span() noexcept { return {data_, n_}; }

private:
  std::size_t n_;
  double *data_;
};

void require_grid(GridSpec const &expected, GridSpec const &got)
{
  if (!(expected == got)) { throw Error("grid mismatch in spectral operation"); }
}

void require_neumann(GridSpec const &spec, char const *what)
{
  if (spec.bc() != Boundary::Neumann) {
    throw ValidationError(what, "defined for Neumann grids only");
  }
}

} // namespace

CoefficientField::CoefficientField(GridSpec const &spec, std::vector<double> coeffs)
  : spec_(spec)
  , coeffs_(std::move(coeffs))
{
  if (coeffs_.size() != spec_.size()) { throw Error("coefficient array has wrong length"); }
}

// ---------------------------------------------------------------------------
// SpectralTransform

struct SpectralTransform::Plans
{
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Plans()
  {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) { fftw_destroy_plan(forward); }
    if (inverse != nullptr) { fftw_destroy_plan(inverse); }
  }
};

SpectralTransform::SpectralTransform(GridSpec const &spec)
  : spec_(spec)
{
  int const n = spec.n();
  auto plans = std::make_shared<Plans>();
  {
    std::lock_guard lock(planner_mutex());
    AlignedBuffer probe(spec.size());
    fftw_r2r_kind fwd = FFTW_DHT;
    fftw_r2r_kind inv = FFTW_DHT;
    if (spec.bc() == Boundary::Neumann) {
      fwd = FFTW_REDFT10;
      inv = FFTW_REDFT01;
    }
    plans->forward = fftw_plan_r2r_2d(n, n, probe.data(), probe.data(), fwd, fwd, FFTW_ESTIMATE);
    plans->inverse = fftw_plan_r2r_2d(n, n, probe.data(), probe.data(), inv, inv, FFTW_ESTIMATE);
  }
  if (plans->forward == nullptr || plans->inverse == nullptr) { throw Error("FFTW planning failed"); }
  plans_ = std::move(plans);

  forward_scale_.resize(static_cast<std::size_t>(n));
  inverse_scale_.resize(static_cast<std::size_t>(n));
  double const dn = n;
  for (int k = 0; k < n; ++k) {
    auto const kk = static_cast<std::size_t>(k);
    if (spec.bc() == Boundary::Periodic) {
      // DHT is an involution up to a factor n per axis.
      forward_scale_[kk] = 1.0 / std::sqrt(dn);
      inverse_scale_[kk] = 1.0 / std::sqrt(dn);
    } else {
      // REDFT10 = 2 sum x cos(...); orthonormal DCT-II weights c_0 = 1/sqrt(2).
      forward_scale_[kk] = k == 0 ? 0.5 / std::sqrt(dn) : 1.0 / std::sqrt(2.0 * dn);
      inverse_scale_[kk] = k == 0 ? 1.0 / std::sqrt(dn) : 1.0 / std::sqrt(2.0 * dn);
    }
  }
}

void SpectralTransform::forward_raw(std::span<double> values) const
{
  if (values.size() != spec_.size()) { throw Error("transform input has wrong length"); }
  AlignedBuffer buf(values.size());
  std::copy(values.begin(), values.end(), buf.data());
  fftw_execute_r2r(plans_->forward, buf.data(), buf.data());
  std::copy(buf.data(), buf.data() + values.size(), values.begin());
}

void SpectralTransform::inverse_raw(std::span<double> values) const
{
  if (values.size() != spec_.size()) { throw Error("transform input has wrong length"); }
  AlignedBuffer buf(values.size());
  std::copy(values.begin(), values.end(), buf.data());
  fftw_execute_r2r(plans_->inverse, buf.data(), buf.data());
  std::copy(buf.data(), buf.data() + values.size(), values.begin());
}

double SpectralTransform::raw_round_trip_scale() const noexcept
{
  double const n = spec_.n();
  return spec_.bc() == Boundary::Periodic ? n * n : 4.0 * n * n;
}

CoefficientField SpectralTransform::forward(Field const &v) const
{
  require_grid(spec_, v.spec());
  std::vector<double> c(v.data());
  forward_raw(c);
  int const n = spec_.n();
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      c[spec_.linear_index(k, l)] *= forward_scale_[static_cast<std::size_t>(k)] *
                                     forward_scale_[static_cast<std::size_t>(l)];
    }
  }
  return CoefficientField(spec_, std::move(c));
}

Field SpectralTransform::inverse(CoefficientField const &c) const
{
  require_grid(spec_, c.spec());
  std::vector<double> v(c.values().begin(), c.values().end());
  int const n = spec_.n();
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      v[spec_.linear_index(k, l)] *= inverse_scale_[static_cast<std::size_t>(k)] *
                                     inverse_scale_[static_cast<std::size_t>(l)];
    }
  }
  inverse_raw(v);
  return Field(spec_, std::move(v));
}

// ---------------------------------------------------------------------------
// LaplacianOperator

LaplacianOperator::LaplacianOperator(GridSpec const &spec)
  : spec_(spec)
  , eigenvalues_(spec.size())
{
  int const n = spec.n();
  double const h = spec.h();
  double const denom = spec.bc() == Boundary::Periodic ? n : 2.0 * n;
  std::vector<double> s2(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double const s = std::sin(std::numbers::pi * k / denom);
    s2[static_cast<std::size_t>(k)] = s * s;
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      eigenvalues_[spec.linear_index(k, l)] =
        -4.0 / (h * h) * (s2[static_cast<std::size_t>(k)] + s2[static_cast<std::size_t>(l)]);
    }
  }
}

void LaplacianOperator::apply(std::span<double const> in, std::span<double> out) const
{
  int const n = spec_.n();
  if (in.size() != spec_.size() || out.size() != spec_.size()) { throw Error("Laplacian operand has wrong length"); }
  double const inv_h2 = 1.0 / (spec_.h() * spec_.h());
  bool const periodic = spec_.bc() == Boundary::Periodic;
  auto const N = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    int up = i - 1;
    int down = i + 1;
    if (periodic) {
      up = (i == 0) ? n - 1 : up;
      down = (i == n - 1) ? 0 : down;
    } else {
      up = (i == 0) ? 0 : up;
      down = (i == n - 1) ? n - 1 : down;
    }
    double const *row = in.data() + static_cast<std::size_t>(i) * N;
    double const *row_up = in.data() + static_cast<std::size_t>(up) * N;
    double const *row_down = in.data() + static_cast<std::size_t>(down) * N;
    double *dst = out.data() + static_cast<std::size_t>(i) * N;
    for (int j = 0; j < n; ++j) {
      int left = j - 1;
      int right = j + 1;
      if (j == 0) { left = periodic ? n - 1 : 0; }
      if (j == n - 1) { right = periodic ? 0 : n - 1; }
      double const c = row[j];
      dst[j] = inv_h2 * ((row_up[j] - c) + (row_down[j] - c) + (row[left] - c) + (row[right] - c));
    }
  }
}

Field LaplacianOperator::apply(Field const &v) const
{
  require_grid(spec_, v.spec());
  Field out(spec_);
  apply(v.values(), out.values());
  return out;
}

// ---------------------------------------------------------------------------
// Preconditioner

PrecondSymbol PrecondSymbol::from_laplacian(LaplacianOperator const &lap, std::function<double(double)> const &fn)
{
  PrecondSymbol sym{lap.spec(), {}};
  sym.g.reserve(lap.eigenvalues().size());
  for (double lambda : lap.eigenvalues()) { sym.g.push_back(fn(lambda)); }
  sym.validate();
  return sym;
}

void PrecondSymbol::validate() const
{
  if (g.size() != spec.size()) { throw Error("preconditioner symbol has wrong length"); }
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (!(g[m] > 0.0) || !std::isfinite(g[m])) {
      throw Error("indefinite preconditioner: symbol entry " + std::to_string(m) + " = " + std::to_string(g[m]));
    }
  }
}

Field precond_solve(SpectralTransform const &transform, PrecondSymbol const &symbol, Field const &r)
{
  symbol.validate();
  require_grid(transform.spec(), symbol.spec);
  auto c = transform.forward(r);
  std::vector<double> scaled(c.values().begin(), c.values().end());
  for (std::size_t m = 0; m < scaled.size(); ++m) { scaled[m] /= symbol.g[m]; }
  return transform.inverse(CoefficientField(transform.spec(), std::move(scaled)));
}

PreconditionerSolver::PreconditionerSolver(std::shared_ptr<SpectralTransform const> transform,
                                           PrecondSymbol const &symbol)
  : transform_(std::move(transform))
{
  symbol.validate();
  require_grid(transform_->spec(), symbol.spec);
  double const scale = transform_->raw_round_trip_scale();
  scaled_inverse_.resize(symbol.g.size());
  for (std::size_t m = 0; m < symbol.g.size(); ++m) { scaled_inverse_[m] = 1.0 / (symbol.g[m] * scale); }
}

void PreconditionerSolver::solve(std::span<double const> r, std::span<double> out) const
{
  if (r.size() != scaled_inverse_.size() || out.size() != r.size()) { throw Error("preconditioner operand has wrong length"); }
  std::copy(r.begin(), r.end(), out.begin());
  transform_->forward_raw(out);
  for (std::size_t m = 0; m < out.size(); ++m) { out[m] *= scaled_inverse_[m]; }
  transform_->inverse_raw(out);
}

Field PreconditionerSolver::solve(Field const &r) const
{
  require_grid(transform_->spec(), r.spec());
  Field out(r.spec());
  solve(r.values(), out.values());
  return out;
}

// ---------------------------------------------------------------------------
// QuadraticKernelConvolution

struct QuadraticKernelConvolution::Plans
{
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans()
  {
    std::lock_guard lock(planner_mutex());
    if (r2c != nullptr) { fftw_destroy_plan(r2c); }
    if (c2r != nullptr) { fftw_destroy_plan(c2r); }
  }
};

QuadraticKernelConvolution::QuadraticKernelConvolution(GridSpec const &spec)
  : spec_(spec)
  , padded_(2 * spec.n())
{
  int const n = spec.n();
  int const m = padded_;
  std::size_t const real_len = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  std::size_t const cplx_len = static_cast<std::size_t>(m) * static_cast<std::size_t>(m / 2 + 1);

  AlignedBuffer real(real_len);
  AlignedBuffer cplx(2 * cplx_len);
  auto plans = std::make_shared<Plans>();
  {
    std::lock_guard lock(planner_mutex());
    plans->r2c = fftw_plan_dft_r2c_2d(m, m, real.data(), reinterpret_cast<fftw_complex *>(cplx.data()), FFTW_ESTIMATE);
    plans->c2r = fftw_plan_dft_c2r_2d(m, m, reinterpret_cast<fftw_complex *>(cplx.data()), real.data(), FFTW_ESTIMATE);
  }
  if (plans->r2c == nullptr || plans->c2r == nullptr) { throw Error("FFTW planning failed"); }
  plans_ = std::move(plans);

  // Circulant embedding: slot a holds offset a (a < n) or a - m (a > n); slot n is unused.
  double const h2 = spec.h() * spec.h();
  double const coef = 0.5 * h2 * h2;
  auto offset = [n, m](int a) -> double {
    if (a < n) { return a; }
    if (a == n) { return 0.0; }
    return a - m;
  };
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      double value = 0.0;
      if (a != n && b != n) {
        double const da = offset(a);
        double const db = offset(b);
        value = coef * (da * da + db * db);
      }
      real.data()[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) + static_cast<std::size_t>(b)] = value;
    }
  }
  fftw_execute_dft_r2c(plans_->r2c, real.data(), reinterpret_cast<fftw_complex *>(cplx.data()));
  kernel_hat_.assign(cplx.data(), cplx.data() + 2 * cplx_len);
}

Field QuadraticKernelConvolution::apply(Field const &v) const
{
  require_grid(spec_, v.spec());
  int const n = spec_.n();
  auto const m = static_cast<std::size_t>(padded_);
  std::size_t const cplx_len = m * (m / 2 + 1);
  AlignedBuffer real(m * m);
  AlignedBuffer cplx(2 * cplx_len);
  std::fill(real.data(), real.data() + m * m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      real.data()[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] = v(i, j);
    }
  }
  fftw_execute_dft_r2c(plans_->r2c, real.data(), reinterpret_cast<fftw_complex *>(cplx.data()));
  for (std::size_t q = 0; q < cplx_len; ++q) {
    std::complex<double> const a(cplx.data()[2 * q], cplx.data()[2 * q + 1]);
    std::complex<double> const k(kernel_hat_[2 * q], kernel_hat_[2 * q + 1]);
    auto const p = a * k;
    cplx.data()[2 * q] = p.real();
    cplx.data()[2 * q + 1] = p.imag();
  }
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex *>(cplx.data()), real.data());
  double const scale = 1.0 / static_cast<double>(m * m);
  Field out(spec_);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = scale * real.data()[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge operators

EdgeField::EdgeField(Axis axis, int n, double value)
  : axis_(axis)
  , n_(n)
  , data_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n), value)
{
}

double dot(EdgeField const &a, EdgeField const &b)
{
  if (a.axis() != b.axis() || a.n() != b.n()) { throw Error("edge field mismatch"); }
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) { s += a[m] * b[m]; }
  return s;
}

namespace {

// Node value at position `k` along grid line `line` in direction `axis`.
inline double node(Field const &v, Axis axis, int line, int k)
{
  return axis == Axis::X ? v(line, k) : v(k, line);
}

inline double &node(Field &v, Axis axis, int line, int k)
{
  return axis == Axis::X ? v(line, k) : v(k, line);
}

} // namespace

EdgeField gradient(GridSpec const &spec, Field const &v, Axis axis)
{
  require_neumann(spec, "gradient");
  require_grid(spec, v.spec());
  int const n = spec.n();
  double const inv_h = 1.0 / spec.h();
  EdgeField e(axis, n);
  for (int line = 0; line < n; ++line) {
    for (int k = 1; k < n; ++k) {
      e.at(line, k) = (node(v, axis, line, k) - node(v, axis, line, k - 1)) * inv_h;
    }
    e.at(line, 0) = e.at(line, 1);
    e.at(line, n) = e.at(line, n - 1);
  }
  return e;
}

Field gradient_transpose(GridSpec const &spec, EdgeField const &e)
{
  require_neumann(spec, "gradient_transpose");
  if (e.n() != spec.n()) { throw Error("edge field does not match grid"); }
  int const n = spec.n();
  double const inv_h = 1.0 / spec.h();
  Field out(spec);
  auto const axis = e.axis();
  for (int line = 0; line < n; ++line) {
    for (int k = 1; k < n; ++k) {
      // Interior edge k plus whichever boundary edge duplicates it.
      double w = e.at(line, k);
      if (k == 1) { w += e.at(line, 0); }
      if (k == n - 1) { w += e.at(line, n); }
      node(out, axis, line, k) += w * inv_h;
      node(out, axis, line, k - 1) -= w * inv_h;
    }
  }
  return out;
}

EdgeField midpoint_average(GridSpec const &spec, Field const &v, Axis axis)
{
  require_neumann(spec, "midpoint_average");
  require_grid(spec, v.spec());
  int const n = spec.n();
  EdgeField e(axis, n);
  for (int line = 0; line < n; ++line) {
    for (int k = 1; k < n; ++k) {
      e.at(line, k) = 0.5 * (node(v, axis, line, k) + node(v, axis, line, k - 1));
    }
    e.at(line, 0) = node(v, axis, line, 0);
    e.at(line, n) = node(v, axis, line, n - 1);
  }
  return e;
}

Field midpoint_average_transpose(GridSpec const &spec, EdgeField const &e)
{
  require_neumann(spec, "midpoint_average_transpose");
  if (e.n() != spec.n()) { throw Error("edge field does not match grid"); }
  int const n = spec.n();
  Field out(spec);
  auto const axis = e.axis();
  for (int line = 0; line < n; ++line) {
    for (int k = 1; k < n; ++k) {
      double const w = 0.5 * e.at(line, k);
      node(out, axis, line, k) += w;
      node(out, axis, line, k - 1) += w;
    }
    node(out, axis, line, 0) += e.at(line, 0);
    node(out, axis, line, n - 1) += e.at(line, n);
  }
  return out;
}

} // namespace rdpdhg
