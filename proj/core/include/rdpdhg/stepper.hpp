#pragma once

#include "rdpdhg/error.hpp"
#include "rdpdhg/grid.hpp"
#include "rdpdhg/models.hpp"
#include "rdpdhg/pdhg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rdpdhg {

struct TimeSchedule
{
  double final_time = 1.0;
  /// Initial and largest step size.
  double ht0 = 1e-3;
  bool adaptive = false;
  double eta = 0.75;
  /// Shrink above n_star_hi iterations, grow below n_star_lo.
  int n_star_hi = 100;
  int n_star_lo = 20;

  void validate() const;

  /// Smallest step size any attempt may use: ht0 * eta^20.
  double min_ht() const;
};

inline constexpr int kMaxShrinks = 20;

/// Between-step step-size policy.
double adapt_ht(double ht, int pdhg_iters, TimeSchedule const &schedule);

struct ShrinkResult
{
  SystemField u;
  double ht_used = 0.0;
  StepTrace trace;
  int shrinks = 0;
};

/// Raised when a step cannot be completed; carries the last attempt's trace.
class SolverAbort : public Error
{
public:
  SolverAbort(std::string const &message, StepTrace trace, double time, double ht)
    : Error(message)
    , trace_(std::move(trace))
    , time_(time)
    , ht_(ht)
  {
  }

  StepTrace const &trace() const noexcept { return trace_; }
  double time() const noexcept { return time_; }
  double ht() const noexcept { return ht_; }

private:
  StepTrace trace_;
  double time_;
  double ht_;
};

/// One committed step: on failure multiplies ht by eta and retries, at most
/// kMaxShrinks times and never below min_ht(). Throws SolverAbort.
ShrinkResult retry_with_shrink(EquationModel const &model, SystemField const &u_prev, double ht,
                               TimeSchedule const &schedule, PdhgParams const &params);

struct Snapshot
{
  double requested_time = 0.0;
  double time = 0.0;
  SystemField u;
};

struct StepInfo
{
  int step = 0; // 1-based
  double time = 0.0;
  double ht = 0.0;
  SystemField const *u = nullptr;
  StepTrace const *trace = nullptr;
};

struct RunOptions
{
  /// Requested snapshot times; each is taken at the first accepted time at or after it.
  std::vector<double> snapshot_times;
  /// 1-based step numbers whose full per-iteration trace is kept.
  std::vector<int> trace_steps;
  /// Called after every accepted step.
  std::function<void(StepInfo const &)> on_step;
  std::uint64_t seed = 0;
};

struct RunReport
{
  /// Accepted times, starting with t = 0.
  std::vector<double> times;
  /// One entry per accepted step.
  std::vector<double> ht_history;
  std::vector<int> pdhg_iters;
  std::vector<double> final_residuals;
  std::vector<Snapshot> snapshots;
  std::vector<std::pair<int, StepTrace>> traces;
  /// Number of in-step retries at a smaller step size.
  int shrink_events = 0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  SystemField final_state;

  int steps() const noexcept { return static_cast<int>(ht_history.size()); }
};

/// Integrates from t = 0 to exactly t = final_time. Throws SolverAbort when a
/// step fails on a fixed schedule or when retries are exhausted.
RunReport run(EquationModel const &model, SystemField const &u0, TimeSchedule const &schedule,
              PdhgParams const &params, RunOptions const &options = {});

} // namespace rdpdhg
