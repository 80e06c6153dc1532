#pragma once

#include "rdpdhg/grid.hpp"
#include "rdpdhg/models.hpp"

#include <string_view>
#include <vector>

namespace rdpdhg {

struct PdhgParams
{
  double tau_u = 0.5;
  double tau_p = 0.5;
  double omega = 1.0;
  double delta = 1e-7;
  int max_iters = 5000;
  double divergence_factor = 1e4;
  /// Use G = I instead of the model's preconditioner.
  bool identity_preconditioner = false;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

enum class PdhgOutcome
{
  Converged,
  MaxIters,
  Diverged
};

std::string_view to_string(PdhgOutcome outcome);

struct StepTrace
{
  /// ||Res(U_n)||_2 for n = 0 .. iterations.
  std::vector<double> residual_norms;
  int iterations = 0;
  PdhgOutcome outcome = PdhgOutcome::MaxIters;

  double final_residual() const { return residual_norms.back(); }
};

struct StepResult
{
  SystemField u;
  StepTrace trace;
};

/// ||F(U) / ht||_2, summed over components.
double residual_norm(EquationModel const &model, SystemField const &u, SystemField const &u_prev, double ht);

/// Solves F(U) = 0 for one implicit step starting from U_0 = U_prev, P_0 = 0.
/// Never throws on solver failure; the outcome is reported in the trace.
StepResult pdhg_step(EquationModel const &model, SystemField const &u_prev, double ht, PdhgParams const &params);

} // namespace rdpdhg
