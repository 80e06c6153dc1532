#include "rdpdhg/pdhg.hpp"

#include "rdpdhg/error.hpp"

#include <cmath>
#include <limits>

namespace rdpdhg {

void PdhgParams::validate() const
{
  auto positive = [](double v, char const *field) {
    if (!(v > 0.0) || !std::isfinite(v)) { throw ValidationError(field, "must be positive and finite"); }
  };
  positive(tau_u, "tau_u");
  positive(tau_p, "tau_p");
  positive(delta, "delta");
  if (!(omega >= 0.0) || !std::isfinite(omega)) { throw ValidationError("omega", "must be non-negative and finite"); }
  if (max_iters < 1) { throw ValidationError("max_iters", "must be at least 1"); }
  if (!(divergence_factor > 1.0)) { throw ValidationError("divergence_factor", "must be greater than 1"); }
}

std::string_view to_string(PdhgOutcome outcome)
{
  switch (outcome) {
  case PdhgOutcome::Converged: return "converged";
  case PdhgOutcome::MaxIters: return "max-iters";
  case PdhgOutcome::Diverged: return "diverged";
  }
  return "unknown";
}

double residual_norm(EquationModel const &model, SystemField const &u, SystemField const &u_prev, double ht)
{
  return l2_norm_sum(model.residual(u, u_prev, ht)) / ht;
}

StepResult pdhg_step(EquationModel const &model, SystemField const &u_prev, double ht, PdhgParams const &params)
{
  params.validate();
  if (!(ht > 0.0) || !std::isfinite(ht)) { throw ValidationError("h_t", "must be positive and finite"); }

  int const nc = model.n_components();
  std::vector<PreconditionerSolver> solvers;
  if (!params.identity_preconditioner) {
    for (auto const &sym : model.precond_symbols(ht)) { solvers.emplace_back(model.transform(), sym); }
  }

  StepResult out{u_prev, {}};
  auto &u = out.u;
  auto &trace = out.trace;
  SystemField p(model.spec(), nc, 0.0);
  SystemField p_bar(model.spec(), nc, 0.0);

  auto fail = [&](PdhgOutcome o) {
    trace.outcome = o;
    return out;
  };

  try {
    SystemField f = model.residual(u, u_prev, ht);
    double res = l2_norm_sum(f) / ht;
    trace.residual_norms.push_back(res);
    double const initial = res;
    if (!std::isfinite(res)) { return fail(PdhgOutcome::Diverged); }

    while (true) {
      if (res <= params.delta) {
        trace.outcome = PdhgOutcome::Converged;
        return out;
      }
      if (trace.iterations >= params.max_iters) { return fail(PdhgOutcome::MaxIters); }

      for (int c = 0; c < nc; ++c) {
        Field step = solvers.empty() ? f[c] : solvers[static_cast<std::size_t>(c)].solve(f[c]);
        auto &pc = p[c];
        auto &bc = p_bar[c];
        for (std::size_t l = 0; l < pc.size(); ++l) {
          double const next = pc[l] + params.tau_p * step[l];
          bc[l] = next + params.omega * (next - pc[l]);
          pc[l] = next;
        }
      }
      SystemField const jt = model.jacobian_transpose_apply(u, p_bar, ht);
      for (int c = 0; c < nc; ++c) { u[c].axpy(-params.tau_u, jt[c]); }
      ++trace.iterations;

      f = model.residual(u, u_prev, ht);
      res = l2_norm_sum(f) / ht;
      trace.residual_norms.push_back(res);
      if (!std::isfinite(res) || res > params.divergence_factor * initial) { return fail(PdhgOutcome::Diverged); }
    }
  } catch (BlowUpError const &) {
    if (trace.residual_norms.size() < static_cast<std::size_t>(trace.iterations) + 1) {
      trace.residual_norms.push_back(std::numeric_limits<double>::infinity());
    }
    return fail(PdhgOutcome::Diverged);
  }
}

} // namespace rdpdhg
