#include "rdpdhg/theory.hpp"

#include "rdpdhg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rdpdhg {

double rate_function(double t)
{
  if (!(t >= 0.0)) { throw ValidationError("t", "rate function needs t >= 0"); }
  if (t <= 1.0) { return std::sqrt(1.0 - t); }
  return t - 1.0 + std::sqrt(t * t - t);
}

double block_spectral_radius(double s, double omega)
{
  // [[1 - (1 + omega) s, -tau_u lambda], [tau_p lambda, 1]]
  double const tr = 2.0 - (1.0 + omega) * s;
  double const det = 1.0 - omega * s;
  double const disc = tr * tr - 4.0 * det;
  if (disc < 0.0) { return std::sqrt(det); }
  double const r = std::sqrt(disc);
  return std::max(std::abs(0.5 * (tr + r)), std::abs(0.5 * (tr - r)));
}

double spectral_radius_M(std::span<double const> eigs, double tau_u, double tau_p, double omega)
{
  double rho = 0.0;
  for (double lambda : eigs) {
    if (lambda == 0.0) { throw ValidationError("eigs", "singular A"); }
    double const s = tau_u * tau_p * lambda * lambda;
    rho = std::max(rho, omega == 1.0 ? rate_function(s) : block_spectral_radius(s, omega));
  }
  return rho;
}

double eta_star(double kappa)
{
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) { throw ValidationError("kappa", "must be >= 1"); }
  if (kappa == 1.0) { return 1.0; }
  double const k2 = kappa * kappa;
  double const base = 0.75 * k2 + 1.5 - 0.25 / k2;
  double const root = (kappa - 1.0) / (2.0 * kappa) * std::sqrt((kappa - 1.0) * (3.0 * kappa + 1.0)) *
                      std::sqrt(base + 2.0 * kappa);
  return 2.0 * k2 / (base + root);
}

double gamma_star(double kappa)
{
  double const e = eta_star(kappa);
  return std::sqrt(std::max(0.0, 1.0 - e / (kappa * kappa)));
}

RatePrediction predict_rate(double kappa, double lambda_max)
{
  if (!(lambda_max > 0.0)) { throw ValidationError("lambda_max", "must be positive"); }
  RatePrediction p;
  p.kappa = kappa;
  p.eta_star = eta_star(kappa);
  p.gamma_star = gamma_star(kappa);
  p.tau_product_opt = p.eta_star / (lambda_max * lambda_max);
  return p;
}

double heat_condition_number(double lambda_coef, int n, double ht)
{
  if (n < 2) { throw ValidationError("n", "must be at least 2"); }
  if (!(ht >= 0.0) || !(lambda_coef >= 0.0)) { throw ValidationError("h_t", "lambda and h_t must be non-negative"); }
  double const nn = static_cast<double>(n);
  if (n % 2 == 0) { return 1.0 + 4.0 * lambda_coef * nn * nn * ht; }
  double const s = std::sin(std::numbers::pi * (n - 1) / (2.0 * nn));
  return 1.0 + 4.0 * lambda_coef * nn * nn * ht * s * s;
}

double fit_linear_rate(std::span<double const> residual_norms)
{
  if (residual_norms.size() < 10) { throw ValidationError("residual_norms", "need at least 10 entries"); }
  for (double r : residual_norms) {
    if (!(r > 0.0) || !std::isfinite(r)) { throw ValidationError("residual_norms", "entries must be positive"); }
  }
  std::size_t const start = residual_norms.size() / 2;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = start; k + 1 < residual_norms.size(); ++k) {
    sum += std::log(residual_norms[k + 1] / residual_norms[k]);
    ++count;
  }
  return std::exp(sum / static_cast<double>(count));
}

} // namespace rdpdhg
