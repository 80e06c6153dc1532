#pragma once

#include <span>

namespace rdpdhg {

/// max |roots| of the 2x2 block of the linear PDHG iteration at t = tau_u tau_p lambda^2:
/// sqrt(1 - t) on [0, 1], t - 1 + sqrt(t^2 - t) beyond.
double rate_function(double t);

/// Spectral radius of the PDHG iteration matrix for F(U) = A U with A
/// symmetric and eigenvalues `eigs`. omega = 1 reduces to max rate_function.
double spectral_radius_M(std::span<double const> eigs, double tau_u, double tau_p, double omega = 1.0);

/// Spectral radius of a single 2x2 block with s = tau_u tau_p lambda^2.
double block_spectral_radius(double s, double omega);

/// Optimal normalized step product in [1, 4/3) for condition number kappa >= 1.
double eta_star(double kappa);

/// Optimal linear rate sqrt(1 - eta_star / kappa^2).
double gamma_star(double kappa);

struct RatePrediction
{
  double kappa = 1.0;
  double eta_star = 1.0;
  double gamma_star = 0.0;
  /// eta_star / lambda_max^2.
  double tau_product_opt = 1.0;
};

RatePrediction predict_rate(double kappa, double lambda_max = 1.0);

/// Condition number of I - ht lambda Lap for the unit-interval periodic
/// Laplacian with n points: 1 + 4 lambda n^2 ht for even n, extreme
/// eigenvalues otherwise.
double heat_condition_number(double lambda_coef, int n, double ht);

/// exp(mean log(r_{k+1} / r_k)) over the trailing half of the sequence.
double fit_linear_rate(std::span<double const> residual_norms);

} // namespace rdpdhg
