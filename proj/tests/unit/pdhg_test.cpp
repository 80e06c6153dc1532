#include <doctest.h>

#include "oracles.hpp"

#include <rdpdhg/error.hpp>
#include <rdpdhg/pdhg.hpp>

using namespace rdpdhg;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct HeatSetup
{
  GridSpec spec = GridSpec::periodic(1.0, 6);
  double a = 0.01;
  double ht = 0.05;
  AllenCahnModel model{spec, AllenCahnParams{a, 0.0}};
  MatrixXd B = MatrixXd::Identity(36, 36) - ht * a * oracle::dense_laplacian(spec);
};

std::string field_of(PdhgParams const &p)
{
  try {
    p.validate();
  } catch (ValidationError const &e) {
    return e.field();
  }
  return {};
}

} // namespace

TEST_CASE("parameter validation names the offending field")
{
  PdhgParams p;
  CHECK(field_of(p).empty());
  p.tau_u = -1.0;
  CHECK(field_of(p) == "tau_u");
  p = {};
  p.tau_p = 0.0;
  CHECK(field_of(p) == "tau_p");
  p = {};
  p.delta = 0.0;
  CHECK(field_of(p) == "delta");
  p = {};
  p.omega = -0.5;
  CHECK(field_of(p) == "omega");
  p = {};
  p.max_iters = 0;
  CHECK(field_of(p) == "max_iters");
  p = {};
  p.divergence_factor = 1.0;
  CHECK(field_of(p) == "divergence_factor");
  CHECK(to_string(PdhgOutcome::MaxIters) == "max-iters");
}

TEST_CASE("first iterate matches a hand-assembled update")
{
  HeatSetup s;
  std::mt19937_64 rng(1);
  auto const up = oracle::random_system(s.spec, 1, rng);
  PdhgParams params;
  params.tau_u = 0.3;
  params.tau_p = 0.7;
  params.omega = 1.5;
  params.max_iters = 1;

  VectorXd const b = oracle::to_vec(up[0]);
  MatrixXd const G = s.B * s.B;
  VectorXd const f0 = s.B * b - b;
  VectorXd const p1 = params.tau_p * G.ldlt().solve(f0);
  VectorXd const pbar = p1 + params.omega * p1;
  VectorXd const u1 = b - params.tau_u * s.B.transpose() * pbar;

  auto const r = pdhg_step(s.model, up, s.ht, params);
  CHECK(r.trace.outcome == PdhgOutcome::MaxIters);
  CHECK(r.trace.iterations == 1);
  REQUIRE(r.trace.residual_norms.size() == 2);
  CHECK(r.trace.residual_norms[0] == doctest::Approx(f0.norm() / s.ht).epsilon(1e-12));
  CHECK((oracle::to_vec(r.u[0]) - u1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.trace.residual_norms[1] == doctest::Approx((s.B * u1 - b).norm() / s.ht).epsilon(1e-10));
}

TEST_CASE("linear step converges to the dense solution")
{
  HeatSetup s;
  std::mt19937_64 rng(2);
  auto const up = oracle::random_system(s.spec, 1, rng);
  PdhgParams params;
  params.delta = 1e-11;
  auto const r = pdhg_step(s.model, up, s.ht, params);
  CHECK(r.trace.outcome == PdhgOutcome::Converged);
  CHECK(r.trace.residual_norms.size() == static_cast<std::size_t>(r.trace.iterations) + 1);
  CHECK(r.trace.final_residual() <= params.delta);
  VectorXd const exact = s.B.partialPivLu().solve(oracle::to_vec(up[0]));
  CHECK((oracle::to_vec(r.u[0]) - exact).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("exact preconditioner with unit step product converges in two iterations")
{
  HeatSetup s;
  std::mt19937_64 rng(3);
  auto const up = oracle::random_system(s.spec, 1, rng);
  PdhgParams params;
  params.tau_u = 1.0;
  params.tau_p = 1.0;
  params.delta = 1e-10;
  auto const r = pdhg_step(s.model, up, s.ht, params);
  CHECK(r.trace.outcome == PdhgOutcome::Converged);
  CHECK(r.trace.iterations <= 2);
}

TEST_CASE("already converged input takes zero iterations")
{
  HeatSetup s;
  SystemField const flat(s.spec, 1, 0.3);
  auto const r = pdhg_step(s.model, flat, s.ht, PdhgParams{});
  CHECK(r.trace.outcome == PdhgOutcome::Converged);
  CHECK(r.trace.iterations == 0);
  CHECK(r.trace.residual_norms.size() == 1);
}

TEST_CASE("oversized unpreconditioned steps are reported as divergence")
{
  auto const spec = GridSpec::periodic(1.0, 16);
  AllenCahnModel const model(spec, AllenCahnParams{1.0, 0.0});
  std::mt19937_64 rng(4);
  auto const up = oracle::random_system(spec, 1, rng);
  PdhgParams params;
  params.identity_preconditioner = true;
  params.tau_u = 1.0;
  params.tau_p = 1.0;
  auto const r = pdhg_step(model, up, 1.0, params);
  CHECK(r.trace.outcome == PdhgOutcome::Diverged);
  CHECK(r.trace.residual_norms.size() == static_cast<std::size_t>(r.trace.iterations) + 1);
}

TEST_CASE("model blow-up is reported, not thrown")
{
  auto const spec = GridSpec::periodic(1.0, 8);
  AllenCahnModel const model(spec, AllenCahnParams{0.01, 1e6});
  SystemField up(spec, 1, 0.0);
  up[0][0] = 1e120;
  PdhgParams params;
  auto const r = pdhg_step(model, up, 1.0, params);
  CHECK(r.trace.outcome == PdhgOutcome::Diverged);
  CHECK_FALSE(std::isfinite(r.trace.final_residual()));
}

TEST_CASE("residual norm sums per-component norms")
{
  auto const spec = GridSpec::neumann(1.0, 4);
  SchnakenbergModel const model(spec, SchnakenbergParams{});
  SystemField const u(spec, 2, 0.5);
  SystemField const up(spec, 2, 0.4);
  double const ht = 0.01;
  auto const f = model.residual(u, up, ht);
  CHECK(residual_norm(model, u, up, ht) == doctest::Approx((l2_norm(f[0]) + l2_norm(f[1])) / ht));
  CHECK_THROWS_AS(pdhg_step(model, up, 0.0, PdhgParams{}), ValidationError);
}
