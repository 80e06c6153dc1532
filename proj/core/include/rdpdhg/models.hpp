#pragma once

#include "rdpdhg/grid.hpp"
#include "rdpdhg/spectral.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rdpdhg {

/// u_t = a Lap u - b W'(u), W(u) = (u^2 - 1)^2 / 4. b = 0 gives the heat equation.
struct AllenCahnParams
{
  double a = 0.01;
  double b = 100.0;
  void validate() const;
};

/// u_t = -a Lap^2 u + b Lap W'(u).
struct CahnHilliardParams
{
  double a = 0.01;
  double b = 1.0;
  void validate() const;
};

/// Functionalized Cahn-Hilliard:
/// u_t = Lap (eps^2 Lap - W''(u) + eps^2)(eps^2 Lap u - W'(u)).
struct SixthOrderParams
{
  double epsilon = 0.18;
  void validate() const;
};

/// u_t = D1 Lap u + kappa (a - u + u^2 v),  v_t = D2 Lap v + kappa (b - u^2 v).
struct SchnakenbergParams
{
  double kappa = 100.0;
  double a = 0.1305;
  double b = 0.7695;
  double d1 = 0.05;
  double d2 = 1.0;
  void validate() const;
};

/// Deer (rho1) and wolves (rho2) with diffusion, nonlocal drift through the
/// quadratic interaction kernel and predator-prey reactions.
struct WolfDeerParams
{
  double d = 0.5;
  double a = 5.0;
  double b = 35.0;
  double c = 2.5;
  /// Turning this off drops the nonlocal drift, leaving pure reaction-diffusion.
  bool nonlocal_drift = true;
  /// Keep the copied one-sided differences at the boundary half-indices in the
  /// drift flux. Off by default: the boundary fluxes are zero (no-flux walls).
  bool copy_boundary_flux = false;
  void validate() const;
};

using ModelParams =
  std::variant<AllenCahnParams, CahnHilliardParams, SixthOrderParams, SchnakenbergParams, WolfDeerParams>;

std::string_view model_kind_name(ModelParams const &params);

/// One implicit Euler step of a reaction-diffusion model written as F(U) = 0.
///
/// Implementations supply the residual F, the action of the transposed
/// Jacobian, and the transform-domain symbol of the preconditioner G for each
/// component. Models are immutable; calls are reentrant.
class EquationModel
{
public:
  virtual ~EquationModel() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual int n_components() const noexcept = 0;
  virtual std::vector<std::string> component_names() const = 0;

  GridSpec const &spec() const noexcept { return spec_; }
  LaplacianOperator const &laplacian() const noexcept { return lap_; }
  std::shared_ptr<SpectralTransform const> const &transform() const noexcept { return transform_; }

  /// F(U) for the step U_prev -> U of size ht. Throws BlowUpError on non-finite output.
  virtual SystemField residual(SystemField const &u, SystemField const &u_prev, double ht) const = 0;

  /// grad F(U)^T P.
  virtual SystemField jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const = 0;

  /// One symbol per component; every entry is strictly positive.
  virtual std::vector<PrecondSymbol> precond_symbols(double ht) const = 0;

protected:
  explicit EquationModel(GridSpec const &spec);

  void check_shapes(SystemField const &a, SystemField const &b) const;
  void check_finite(SystemField const &f, char const *where) const;

  GridSpec spec_;
  LaplacianOperator lap_;
  std::shared_ptr<SpectralTransform const> transform_;
};

class AllenCahnModel final : public EquationModel
{
public:
  AllenCahnModel(GridSpec const &spec, AllenCahnParams const &params);

  std::string_view name() const noexcept override { return "allen-cahn"; }
  int n_components() const noexcept override { return 1; }
  std::vector<std::string> component_names() const override { return {"u"}; }

  SystemField residual(SystemField const &u, SystemField const &u_prev, double ht) const override;
  SystemField jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const override;
  std::vector<PrecondSymbol> precond_symbols(double ht) const override;

  AllenCahnParams const &params() const noexcept { return params_; }

private:
  AllenCahnParams params_;
};

class CahnHilliardModel final : public EquationModel
{
public:
  CahnHilliardModel(GridSpec const &spec, CahnHilliardParams const &params);

  std::string_view name() const noexcept override { return "cahn-hilliard"; }
  int n_components() const noexcept override { return 1; }
  std::vector<std::string> component_names() const override { return {"u"}; }

  SystemField residual(SystemField const &u, SystemField const &u_prev, double ht) const override;
  SystemField jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const override;
  std::vector<PrecondSymbol> precond_symbols(double ht) const override;

  CahnHilliardParams const &params() const noexcept { return params_; }

private:
  CahnHilliardParams params_;
};

class SixthOrderModel final : public EquationModel
{
public:
  SixthOrderModel(GridSpec const &spec, SixthOrderParams const &params);

  std::string_view name() const noexcept override { return "sixth-order"; }
  int n_components() const noexcept override { return 1; }
  std::vector<std::string> component_names() const override { return {"u"}; }

  SystemField residual(SystemField const &u, SystemField const &u_prev, double ht) const override;
  SystemField jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const override;
  std::vector<PrecondSymbol> precond_symbols(double ht) const override;

  SixthOrderParams const &params() const noexcept { return params_; }

private:
  SixthOrderParams params_;
};

class SchnakenbergModel final : public EquationModel
{
public:
  SchnakenbergModel(GridSpec const &spec, SchnakenbergParams const &params);

  std::string_view name() const noexcept override { return "schnakenberg"; }
  int n_components() const noexcept override { return 2; }
  std::vector<std::string> component_names() const override { return {"u", "v"}; }

  SystemField residual(SystemField const &u, SystemField const &u_prev, double ht) const override;
  SystemField jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const override;
  std::vector<PrecondSymbol> precond_symbols(double ht) const override;

  SchnakenbergParams const &params() const noexcept { return params_; }

private:
  SchnakenbergParams params_;
};

class WolfDeerModel final : public EquationModel
{
public:
  WolfDeerModel(GridSpec const &spec, WolfDeerParams const &params);

  std::string_view name() const noexcept override { return "wolf-deer"; }
  int n_components() const noexcept override { return 2; }
  std::vector<std::string> component_names() const override { return {"rho1", "rho2"}; }

  SystemField residual(SystemField const &u, SystemField const &u_prev, double ht) const override;
  SystemField jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const override;
  std::vector<PrecondSymbol> precond_symbols(double ht) const override;

  WolfDeerParams const &params() const noexcept { return params_; }

  /// D_x^T (avg_x(rho) .* D_x phi) + D_y^T (avg_y(rho) .* D_y phi).
  Field drift(Field const &rho, Field const &phi) const;

private:
  void close_boundary(EdgeField &flux) const;

  WolfDeerParams params_;
  QuadraticKernelConvolution kernel_;
};

std::unique_ptr<EquationModel> make_model(ModelParams const &params, GridSpec const &spec);

} // namespace rdpdhg
