#include "rdpdhg/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rdpdhg {

void TimeSchedule::validate() const
{
  if (!(final_time > 0.0) || !std::isfinite(final_time)) { throw ValidationError("final_time", "must be positive and finite"); }
  if (!(ht0 > 0.0) || !std::isfinite(ht0)) { throw ValidationError("ht0", "must be positive and finite"); }
  if (!(eta > 0.0 && eta < 1.0)) { throw ValidationError("eta", "must lie in (0, 1)"); }
  if (n_star_lo <= 0) { throw ValidationError("n_star_lo", "must be positive"); }
  if (n_star_hi <= n_star_lo) { throw ValidationError("n_star_hi", "must exceed n_star_lo"); }
}

double TimeSchedule::min_ht() const { return ht0 * std::pow(eta, kMaxShrinks); }

double adapt_ht(double ht, int pdhg_iters, TimeSchedule const &schedule)
{
  if (pdhg_iters > schedule.n_star_hi) { return std::max(ht * schedule.eta, schedule.min_ht()); }
  if (pdhg_iters < schedule.n_star_lo) {
    double const grown = ht / schedule.eta;
    return grown <= schedule.ht0 ? grown : ht;
  }
  return ht;
}

ShrinkResult retry_with_shrink(EquationModel const &model, SystemField const &u_prev, double ht,
                               TimeSchedule const &schedule, PdhgParams const &params)
{
  double const floor = schedule.min_ht() * (1.0 - 1e-12);
  double h = ht;
  for (int shrinks = 0;; ++shrinks) {
    auto attempt = pdhg_step(model, u_prev, h, params);
    if (attempt.trace.outcome == PdhgOutcome::Converged) {
      return {std::move(attempt.u), h, std::move(attempt.trace), shrinks};
    }
    double const next = h * schedule.eta;
    if (shrinks + 1 > kMaxShrinks || next < floor) {
      std::ostringstream msg;
      msg << "step failed (" << to_string(attempt.trace.outcome) << ") after " << shrinks
          << " step-size reductions; last h_t=" << h << ", final residual=" << attempt.trace.final_residual();
      throw SolverAbort(msg.str(), std::move(attempt.trace), 0.0, h);
    }
    h = next;
  }
}

RunReport run(EquationModel const &model, SystemField const &u0, TimeSchedule const &schedule,
              PdhgParams const &params, RunOptions const &options)
{
  schedule.validate();
  params.validate();
  if (u0.n_components() != model.n_components()) {
    throw ValidationError("initial_condition", "component count does not match the model");
  }
  for (auto const &c : u0.components()) {
    if (!(c.spec() == model.spec())) { throw ValidationError("initial_condition", "grid does not match the model"); }
  }

  auto const start = std::chrono::steady_clock::now();
  double const T = schedule.final_time;
  double const floor = schedule.min_ht();
  double const snap_tol = 1e-9 * schedule.ht0;

  RunReport report;
  report.seed = options.seed;
  report.times.push_back(0.0);

  std::vector<std::size_t> order(options.snapshot_times.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return options.snapshot_times[a] < options.snapshot_times[b]; });
  std::size_t next_snap = 0;
  auto take_snapshots = [&](double t, SystemField const &u) {
    while (next_snap < order.size() && t >= options.snapshot_times[order[next_snap]] - snap_tol) {
      report.snapshots.push_back({options.snapshot_times[order[next_snap]], t, u});
      ++next_snap;
    }
  };

  SystemField u = u0;
  double t = 0.0;
  double ht = schedule.ht0;
  take_snapshots(t, u);

  while (t < T) {
    double const remaining = T - t;
    bool landing = false;
    double h = ht;
    if (remaining <= ht * (1.0 + 1e-9)) {
      h = remaining;
      landing = true;
    } else if (remaining - ht < floor) {
      h = 0.5 * remaining;
    }

    SystemField next;
    StepTrace trace;
    double used = h;
    int shrinks = 0;
    if (schedule.adaptive) {
      try {
        auto r = retry_with_shrink(model, u, h, schedule, params);
        next = std::move(r.u);
        trace = std::move(r.trace);
        used = r.ht_used;
        shrinks = r.shrinks;
      } catch (SolverAbort const &e) {
        throw SolverAbort(std::string(e.what()) + " at t=" + std::to_string(t), e.trace(), t, e.ht());
      }
    } else {
      auto r = pdhg_step(model, u, h, params);
      if (r.trace.outcome != PdhgOutcome::Converged) {
        std::ostringstream msg;
        msg << "step " << report.steps() + 1 << " at t=" << t << " failed (" << to_string(r.trace.outcome)
            << ") after " << r.trace.iterations << " iterations, final residual=" << r.trace.final_residual();
        throw SolverAbort(msg.str(), std::move(r.trace), t, h);
      }
      next = std::move(r.u);
      trace = std::move(r.trace);
    }

    u = std::move(next);
    t = (landing && shrinks == 0) ? T : t + used;
    report.shrink_events += shrinks;
    report.times.push_back(t);
    report.ht_history.push_back(used);
    report.pdhg_iters.push_back(trace.iterations);
    report.final_residuals.push_back(trace.final_residual());
    int const step = report.steps();
    if (std::find(options.trace_steps.begin(), options.trace_steps.end(), step) != options.trace_steps.end()) {
      report.traces.emplace_back(step, trace);
    }
    take_snapshots(t, u);
    if (options.on_step) { options.on_step(StepInfo{step, t, used, &u, &trace}); }

    if (schedule.adaptive) { ht = adapt_ht(shrinks > 0 ? used : ht, trace.iterations, schedule); }
  }

  report.final_state = std::move(u);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

} // namespace rdpdhg
