#include "rdpdhg/models.hpp"

#include "rdpdhg/error.hpp"

#include <cmath>
#include <string>

namespace rdpdhg {

namespace {

void require_positive(double v, char const *field)
{
  if (!(v > 0.0) || !std::isfinite(v)) { throw ValidationError(field, "must be positive and finite"); }
}

void require_bc(GridSpec const &spec, Boundary bc, std::string_view model)
{
  if (spec.bc() != bc) {
    throw ValidationError("bc", std::string(model) + " requires a " + std::string(to_string(bc)) + " grid");
  }
}

} // namespace

void AllenCahnParams::validate() const
{
  require_positive(a, "a");
  if (!(b >= 0.0) || !std::isfinite(b)) { throw ValidationError("b", "must be non-negative and finite"); }
}

void CahnHilliardParams::validate() const
{
  require_positive(a, "a");
  require_positive(b, "b");
}

void SixthOrderParams::validate() const { require_positive(epsilon, "epsilon"); }

void SchnakenbergParams::validate() const
{
  require_positive(kappa, "kappa");
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(d1, "d1");
  require_positive(d2, "d2");
}

void WolfDeerParams::validate() const
{
  require_positive(d, "d");
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(c, "c");
}

std::string_view model_kind_name(ModelParams const &params)
{
  struct Visitor
  {
    std::string_view operator()(AllenCahnParams const &) const { return "allen-cahn"; }
    std::string_view operator()(CahnHilliardParams const &) const { return "cahn-hilliard"; }
    std::string_view operator()(SixthOrderParams const &) const { return "sixth-order"; }
    std::string_view operator()(SchnakenbergParams const &) const { return "schnakenberg"; }
    std::string_view operator()(WolfDeerParams const &) const { return "wolf-deer"; }
  };
  return std::visit(Visitor{}, params);
}

EquationModel::EquationModel(GridSpec const &spec)
  : spec_(spec)
  , lap_(spec)
  , transform_(std::make_shared<SpectralTransform const>(spec))
{
}

void EquationModel::check_shapes(SystemField const &a, SystemField const &b) const
{
  if (a.n_components() != n_components() || b.n_components() != n_components()) {
    throw Error(std::string(name()) + ": expected " + std::to_string(n_components()) + " components");
  }
  for (int c = 0; c < n_components(); ++c) {
    if (!(a[c].spec() == spec_) || !(b[c].spec() == spec_)) {
      throw Error(std::string(name()) + ": field grid does not match model grid");
    }
  }
}

void EquationModel::check_finite(SystemField const &f, char const *where) const
{
  auto const names = component_names();
  for (int c = 0; c < f.n_components(); ++c) {
    if (!f[c].all_finite()) { throw BlowUpError(names[static_cast<std::size_t>(c)], where); }
  }
}

// ---------------------------------------------------------------------------
// Allen-Cahn: F = U - U_prev - ht (a Lap U + b (U - U^3))

AllenCahnModel::AllenCahnModel(GridSpec const &spec, AllenCahnParams const &params)
  : EquationModel(spec)
  , params_(params)
{
  params_.validate();
  require_bc(spec, Boundary::Periodic, name());
}

SystemField AllenCahnModel::residual(SystemField const &u, SystemField const &u_prev, double ht) const
{
  check_shapes(u, u_prev);
  auto const &U = u[0];
  auto const &Up = u_prev[0];
  Field F = lap_.apply(U);
  double const a = params_.a;
  double const b = params_.b;
  for (std::size_t l = 0; l < F.size(); ++l) {
    double const x = U[l];
    F[l] = x - Up[l] - ht * (a * F[l] + b * (x - x * x * x));
  }
  SystemField out({std::move(F)});
  check_finite(out, "residual");
  return out;
}

SystemField AllenCahnModel::jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const
{
  check_shapes(u, p);
  auto const &U = u[0];
  auto const &P = p[0];
  Field out = lap_.apply(P);
  double const a = params_.a;
  double const b = params_.b;
  for (std::size_t l = 0; l < out.size(); ++l) {
    double const x = U[l];
    out[l] = P[l] - ht * (a * out[l] + b * (1.0 - 3.0 * x * x) * P[l]);
  }
  SystemField r({std::move(out)});
  check_finite(r, "jacobian");
  return r;
}

std::vector<PrecondSymbol> AllenCahnModel::precond_symbols(double ht) const
{
  double const a = params_.a;
  return {PrecondSymbol::from_laplacian(lap_, [=](double lambda) {
    double const s = 1.0 - a * ht * lambda;
    return s * s;
  })};
}

// ---------------------------------------------------------------------------
// Cahn-Hilliard: F = U + a ht Lap^2 U - U_prev - ht b Lap W'(U)

CahnHilliardModel::CahnHilliardModel(GridSpec const &spec, CahnHilliardParams const &params)
  : EquationModel(spec)
  , params_(params)
{
  params_.validate();
  require_bc(spec, Boundary::Periodic, name());
}

SystemField CahnHilliardModel::residual(SystemField const &u, SystemField const &u_prev, double ht) const
{
  check_shapes(u, u_prev);
  auto const &U = u[0];
  auto const &Up = u_prev[0];
  double const a = params_.a;
  double const b = params_.b;
  // Lap(a Lap U - b W'(U)) gathers both Laplacian terms into one application.
  Field inner = lap_.apply(U);
  for (std::size_t l = 0; l < inner.size(); ++l) {
    double const x = U[l];
    inner[l] = a * inner[l] - b * (x * x * x - x);
  }
  Field F = lap_.apply(inner);
  for (std::size_t l = 0; l < F.size(); ++l) { F[l] = U[l] - Up[l] + ht * F[l]; }
  SystemField out({std::move(F)});
  check_finite(out, "residual");
  return out;
}

SystemField CahnHilliardModel::jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const
{
  check_shapes(u, p);
  auto const &U = u[0];
  auto const &P = p[0];
  double const a = params_.a;
  double const b = params_.b;
  // (I + a ht Lap^2 - ht b Lap diag(W''))^T P = P + ht (a Lap - b diag(W'')) Lap P
  Field lp = lap_.apply(P);
  Field llp = lap_.apply(lp);
  Field out(spec_);
  for (std::size_t l = 0; l < out.size(); ++l) {
    double const x = U[l];
    out[l] = P[l] + ht * (a * llp[l] - b * (3.0 * x * x - 1.0) * lp[l]);
  }
  SystemField r({std::move(out)});
  check_finite(r, "jacobian");
  return r;
}

std::vector<PrecondSymbol> CahnHilliardModel::precond_symbols(double ht) const
{
  double const a = params_.a;
  return {PrecondSymbol::from_laplacian(lap_, [=](double lambda) {
    double const s = 1.0 + a * ht * lambda * lambda;
    return s * s;
  })};
}

// ---------------------------------------------------------------------------
// Sixth order: F = U - ht Lap B(U) mu - U_prev,
//   mu = eps^2 Lap U - W'(U),  B(U) = eps^2 Lap - diag(W''(U)) + eps^2 I

SixthOrderModel::SixthOrderModel(GridSpec const &spec, SixthOrderParams const &params)
  : EquationModel(spec)
  , params_(params)
{
  params_.validate();
  require_bc(spec, Boundary::Periodic, name());
}

SystemField SixthOrderModel::residual(SystemField const &u, SystemField const &u_prev, double ht) const
{
  check_shapes(u, u_prev);
  auto const &U = u[0];
  auto const &Up = u_prev[0];
  double const e2 = params_.epsilon * params_.epsilon;
  Field mu = lap_.apply(U);
  for (std::size_t l = 0; l < mu.size(); ++l) {
    double const x = U[l];
    mu[l] = e2 * mu[l] - (x * x * x - x);
  }
  Field bmu = lap_.apply(mu);
  for (std::size_t l = 0; l < bmu.size(); ++l) {
    double const x = U[l];
    bmu[l] = e2 * bmu[l] - (3.0 * x * x - 1.0) * mu[l] + e2 * mu[l];
  }
  Field F = lap_.apply(bmu);
  for (std::size_t l = 0; l < F.size(); ++l) { F[l] = U[l] - ht * F[l] - Up[l]; }
  SystemField out({std::move(F)});
  check_finite(out, "residual");
  return out;
}

SystemField SixthOrderModel::jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const
{
  check_shapes(u, p);
  auto const &U = u[0];
  auto const &P = p[0];
  double const e2 = params_.epsilon * params_.epsilon;
  // J^T P = P - ht [ (eps^2 Lap - diag W'') B(U) Lap P - mu .* W''' .* Lap P ]
  Field mu = lap_.apply(U);
  for (std::size_t l = 0; l < mu.size(); ++l) {
    double const x = U[l];
    mu[l] = e2 * mu[l] - (x * x * x - x);
  }
  Field lp = lap_.apply(P);
  Field blp = lap_.apply(lp);
  for (std::size_t l = 0; l < blp.size(); ++l) {
    double const x = U[l];
    blp[l] = e2 * blp[l] - (3.0 * x * x - 1.0) * lp[l] + e2 * lp[l];
  }
  Field outer = lap_.apply(blp);
  Field out(spec_);
  for (std::size_t l = 0; l < out.size(); ++l) {
    double const x = U[l];
    double const w2 = 3.0 * x * x - 1.0;
    double const w3 = 6.0 * x;
    out[l] = P[l] - ht * (e2 * outer[l] - w2 * blp[l] - mu[l] * w3 * lp[l]);
  }
  SystemField r({std::move(out)});
  check_finite(r, "jacobian");
  return r;
}

std::vector<PrecondSymbol> SixthOrderModel::precond_symbols(double ht) const
{
  double const e2 = params_.epsilon * params_.epsilon;
  // diag(W''(U)) replaced by 2I: A = I - ht eps^2 Lap (eps^2 Lap - (2 - eps^2) I) Lap
  return {PrecondSymbol::from_laplacian(lap_, [=](double lambda) {
    double const s = 1.0 - ht * e2 * lambda * lambda * (e2 * lambda - (2.0 - e2));
    return s * s;
  })};
}

// ---------------------------------------------------------------------------
// Schnakenberg

SchnakenbergModel::SchnakenbergModel(GridSpec const &spec, SchnakenbergParams const &params)
  : EquationModel(spec)
  , params_(params)
{
  params_.validate();
  require_bc(spec, Boundary::Neumann, name());
}

SystemField SchnakenbergModel::residual(SystemField const &u, SystemField const &u_prev, double ht) const
{
  check_shapes(u, u_prev);
  auto const &U = u[0];
  auto const &V = u[1];
  auto const &Uk = u_prev[0];
  auto const &Vk = u_prev[1];
  auto const &p = params_;
  Field Fu = lap_.apply(U);
  Field Fv = lap_.apply(V);
  for (std::size_t l = 0; l < Fu.size(); ++l) {
    double const uu = U[l];
    double const vv = V[l];
    double const u2v = uu * uu * vv;
    Fu[l] = uu - Uk[l] - ht * (p.d1 * Fu[l] + p.kappa * (p.a - uu + u2v));
    Fv[l] = vv - Vk[l] - ht * (p.d2 * Fv[l] + p.kappa * (p.b - u2v));
  }
  SystemField out({std::move(Fu), std::move(Fv)});
  check_finite(out, "residual");
  return out;
}

SystemField SchnakenbergModel::jacobian_transpose_apply(SystemField const &u, SystemField const &p, double ht) const
{
  check_shapes(u, p);
  auto const &U = u[0];
  auto const &V = u[1];
  auto const &P = p[0];
  auto const &Q = p[1];
  auto const &k = params_;
  Field Ju = lap_.apply(P);
  Field Jv = lap_.apply(Q);
  for (std::size_t l = 0; l < Ju.size(); ++l) {
    double const uu = U[l];
    double const diff = P[l] - Q[l];
    Ju[l] = P[l] - ht * (k.d1 * Ju[l] + k.kappa * (-P[l] + 2.0 * uu * V[l] * diff));
    Jv[l] = Q[l] - ht * (k.d2 * Jv[l] + k.kappa * (uu * uu * diff));
  }
  SystemField r({std::move(Ju), std::move(Jv)});
  check_finite(r, "jacobian");
  return r;
}

std::vector<PrecondSymbol> SchnakenbergModel::precond_symbols(double ht) const
{
  auto symbol = [&](double diffusion) {
    return PrecondSymbol::from_laplacian(lap_, [=](double lambda) {
      double const s = 1.0 - ht * diffusion * lambda;
      return s * s;
    });
  };
  return {symbol(params_.d1), symbol(params_.d2)};
}

// ---------------------------------------------------------------------------
// Wolf-deer:
//   F_c = rho_c - rho_c^k - ht [ D Lap rho_c - drift(rho_c, Phi_c) + R_c ]
//   Phi_1 = K rho_1 - K rho_2,  Phi_2 = K rho_1 + K rho_2

WolfDeerModel::WolfDeerModel(GridSpec const &spec, WolfDeerParams const &params)
  : EquationModel(spec)
  , params_(params)
  , kernel_(spec)
{
  params_.validate();
  require_bc(spec, Boundary::Neumann, name());
}

void WolfDeerModel::close_boundary(EdgeField &flux) const
{
  if (params_.copy_boundary_flux) { return; }
  int const n = spec_.n();
  for (int line = 0; line < n; ++line) {
    flux.at(line, 0) = 0.0;
    flux.at(line, n) = 0.0;
  }
}

Field WolfDeerModel::drift(Field const &rho, Field const &phi) const
{
  Field out(spec_);
  for (Axis axis : {Axis::X, Axis::Y}) {
    EdgeField flux = gradient(spec_, phi, axis);
    EdgeField const avg = midpoint_average(spec_, rho, axis);
    for (std::size_t m = 0; m < flux.size(); ++m) { flux[m] *= avg[m]; }
    close_boundary(flux);
    out += gradient_transpose(spec_, flux);
  }
  return out;
}

SystemField WolfDeerModel::residual(SystemField const &u, SystemField const &u_prev, double ht) const
{
  check_shapes(u, u_prev);
  auto const &r1 = u[0];
  auto const &r2 = u[1];
  auto const &p = params_;

  Field F1 = lap_.apply(r1);
  Field F2 = lap_.apply(r2);
  F1 *= p.d;
  F2 *= p.d;
  if (p.nonlocal_drift) {
    Field const k1 = kernel_.apply(r1);
    Field const k2 = kernel_.apply(r2);
    F1 -= drift(r1, k1 - k2);
    F2 -= drift(r2, k1 + k2);
  }
  for (std::size_t l = 0; l < F1.size(); ++l) {
    double const x = r1[l];
    double const y = r2[l];
    double const predation = p.b * x * y / (1.0 + x);
    double const R1 = p.a * x * (1.0 - x) - predation;
    double const R2 = predation - p.c * y;
    F1[l] = x - u_prev[0][l] - ht * (F1[l] + R1);
    F2[l] = y - u_prev[1][l] - ht * (F2[l] + R2);
  }
  SystemField out({std::move(F1), std::move(F2)});
  check_finite(out, "residual");
  return out;
}

SystemField WolfDeerModel::jacobian_transpose_apply(SystemField const &u, SystemField const &pp, double ht) const
{
  check_shapes(u, pp);
  auto const &r1 = u[0];
  auto const &r2 = u[1];
  auto const &P1 = pp[0];
  auto const &P2 = pp[1];
  auto const &p = params_;

  // Linear diffusion part and the reaction Jacobian.
  Field J1 = lap_.apply(P1);
  Field J2 = lap_.apply(P2);
  for (std::size_t l = 0; l < J1.size(); ++l) {
    double const x = r1[l];
    double const y = r2[l];
    double const inv = 1.0 / (1.0 + x);
    double const dR1_d1 = p.a * (1.0 - 2.0 * x) - p.b * y * inv * inv;
    double const dR1_d2 = -p.b * x * inv;
    double const dR2_d1 = p.b * y * inv * inv;
    double const dR2_d2 = p.b * x * inv - p.c;
    double const a1 = p.d * J1[l] + dR1_d1 * P1[l] + dR2_d1 * P2[l];
    double const a2 = p.d * J2[l] + dR1_d2 * P1[l] + dR2_d2 * P2[l];
    J1[l] = P1[l] - ht * a1;
    J2[l] = P2[l] - ht * a2;
  }

  if (p.nonlocal_drift) {
    // d/d rho_c of drift(rho_c, Phi_c) through the midpoint averages ...
    Field const k1 = kernel_.apply(r1);
    Field const k2 = kernel_.apply(r2);
    Field const phi1 = k1 - k2;
    Field const phi2 = k1 + k2;
    auto through_average = [&](Field const &phi, Field const &P) {
      Field out(spec_);
      for (Axis axis : {Axis::X, Axis::Y}) {
        EdgeField w = gradient(spec_, phi, axis);
        EdgeField const dp = gradient(spec_, P, axis);
        for (std::size_t m = 0; m < w.size(); ++m) { w[m] *= dp[m]; }
        close_boundary(w);
        out += midpoint_average_transpose(spec_, w);
      }
      return out;
    };
    J1.axpy(ht, through_average(phi1, P1));
    J2.axpy(ht, through_average(phi2, P2));

    // ... and through the potentials, using K^T = K.
    Field const w1 = kernel_.apply(drift(r1, P1));
    Field const w2 = kernel_.apply(drift(r2, P2));
    J1.axpy(ht, w1);
    J1.axpy(ht, w2);
    J2.axpy(-ht, w1);
    J2.axpy(ht, w2);
  }

  SystemField r({std::move(J1), std::move(J2)});
  check_finite(r, "jacobian");
  return r;
}

std::vector<PrecondSymbol> WolfDeerModel::precond_symbols(double ht) const
{
  auto const sym = PrecondSymbol::from_laplacian(lap_, [d = params_.d, ht](double lambda) {
    double const s = 1.0 - ht * d * lambda;
    return s * s;
  });
  return {sym, sym};
}

// ---------------------------------------------------------------------------

std::unique_ptr<EquationModel> make_model(ModelParams const &params, GridSpec const &spec)
{
  struct Factory
  {
    GridSpec const &spec;
    std::unique_ptr<EquationModel> operator()(AllenCahnParams const &p) const
    {
      return std::make_unique<AllenCahnModel>(spec, p);
    }
    std::unique_ptr<EquationModel> operator()(CahnHilliardParams const &p) const
    {
      return std::make_unique<CahnHilliardModel>(spec, p);
    }
    std::unique_ptr<EquationModel> operator()(SixthOrderParams const &p) const
    {
      return std::make_unique<SixthOrderModel>(spec, p);
    }
    std::unique_ptr<EquationModel> operator()(SchnakenbergParams const &p) const
    {
      return std::make_unique<SchnakenbergModel>(spec, p);
    }
    std::unique_ptr<EquationModel> operator()(WolfDeerParams const &p) const
    {
      return std::make_unique<WolfDeerModel>(spec, p);
    }
  };
  return std::visit(Factory{spec}, params);
}

} // namespace rdpdhg
