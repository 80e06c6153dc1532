#pragma once

// Independent reference implementations used only by tests: explicitly
// assembled matrices and direct sums.

#include <rdpdhg/grid.hpp>
#include <rdpdhg/models.hpp>
#include <rdpdhg/spectral.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace oracle {

using rdpdhg::Axis;
using rdpdhg::Boundary;
using rdpdhg::Field;
using rdpdhg::GridSpec;
using rdpdhg::SystemField;

inline Eigen::VectorXd to_vec(Field const &f)
{
  return Eigen::Map<Eigen::VectorXd const>(f.data().data(), static_cast<Eigen::Index>(f.size()));
}

inline Eigen::VectorXd to_vec(rdpdhg::EdgeField const &e)
{
  auto const v = e.values();
  return Eigen::Map<Eigen::VectorXd const>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Field to_field(GridSpec const &spec, Eigen::VectorXd const &v)
{
  return Field(spec, std::vector<double>(v.data(), v.data() + v.size()));
}

inline Field random_field(GridSpec const &spec, std::mt19937_64 &rng, double lo = -1.0, double hi = 1.0)
{
  std::uniform_real_distribution<double> dist(lo, hi);
  Field f(spec);
  for (auto &x : f.values()) { x = dist(rng); }
  return f;
}

inline SystemField random_system(GridSpec const &spec, int nc, std::mt19937_64 &rng, double lo = -1.0,
                                 double hi = 1.0)
{
  std::vector<Field> c;
  for (int k = 0; k < nc; ++k) { c.push_back(random_field(spec, rng, lo, hi)); }
  return SystemField(std::move(c));
}

inline int node(GridSpec const &spec, int i, int j) { return i * spec.n() + j; }

/// Five-point Laplacian assembled entry by entry. Neumann ghosts mirror the boundary node.
inline Eigen::MatrixXd dense_laplacian(GridSpec const &spec)
{
  int const n = spec.n();
  double const c = 1.0 / (spec.h() * spec.h());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n * n, n * n);
  auto neighbor = [&](int k) {
    if (spec.bc() == Boundary::Periodic) { return (k + n) % n; }
    return k < 0 ? 0 : (k >= n ? n - 1 : k);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int const row = node(spec, i, j);
      L(row, row) -= 4.0 * c;
      L(row, node(spec, neighbor(i - 1), j)) += c;
      L(row, node(spec, neighbor(i + 1), j)) += c;
      L(row, node(spec, i, neighbor(j - 1))) += c;
      L(row, node(spec, i, neighbor(j + 1))) += c;
    }
  }
  return L;
}

inline int edge_row(GridSpec const &spec, Axis axis, int line, int e)
{
  int const n = spec.n();
  return axis == Axis::X ? line * (n + 1) + e : e * n + line;
}

inline int edge_node(GridSpec const &spec, Axis axis, int line, int k)
{
  return axis == Axis::X ? node(spec, line, k) : node(spec, k, line);
}

/// (n + 1) n x n^2 forward-difference matrix; boundary half-indices repeat the adjacent difference.
inline Eigen::MatrixXd dense_gradient(GridSpec const &spec, Axis axis)
{
  int const n = spec.n();
  double const inv_h = 1.0 / spec.h();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero((n + 1) * n, n * n);
  for (int line = 0; line < n; ++line) {
    for (int e = 0; e <= n; ++e) {
      int const k = e == 0 ? 1 : (e == n ? n - 1 : e);
      int const row = edge_row(spec, axis, line, e);
      D(row, edge_node(spec, axis, line, k)) += inv_h;
      D(row, edge_node(spec, axis, line, k - 1)) -= inv_h;
    }
  }
  return D;
}

/// Midpoint averages; boundary half-indices copy the adjacent node.
inline Eigen::MatrixXd dense_average(GridSpec const &spec, Axis axis)
{
  int const n = spec.n();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero((n + 1) * n, n * n);
  for (int line = 0; line < n; ++line) {
    for (int e = 0; e <= n; ++e) {
      int const row = edge_row(spec, axis, line, e);
      if (e == 0) {
        A(row, edge_node(spec, axis, line, 0)) = 1.0;
      } else if (e == n) {
        A(row, edge_node(spec, axis, line, n - 1)) = 1.0;
      } else {
        A(row, edge_node(spec, axis, line, e - 1)) = 0.5;
        A(row, edge_node(spec, axis, line, e)) = 0.5;
      }
    }
  }
  return A;
}

/// (K u)_{ij} = sum_{kl} h^4 / 2 ((i - k)^2 + (j - l)^2) u_{kl}, as a direct O(n^4) sum.
inline Field direct_kernel(Field const &u)
{
  auto const &spec = u.spec();
  int const n = spec.n();
  double const h4 = std::pow(spec.h(), 4);
  Field out(spec);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) { s += 0.5 * h4 * ((i - k) * (i - k) + (j - l) * (j - l)) * u(k, l); }
      }
      out(i, j) = s;
    }
  }
  return out;
}

/// <(F(U + eps v) - F(U - eps v)) / (2 eps), P> and <v, grad F(U)^T P>.
inline std::pair<double, double> adjoint_pair(rdpdhg::EquationModel const &model, SystemField const &u,
                                              SystemField const &u_prev, SystemField const &v,
                                              SystemField const &p, double ht, double eps = 1e-6)
{
  SystemField plus = u;
  SystemField minus = u;
  for (int c = 0; c < u.n_components(); ++c) {
    plus[c].axpy(eps, v[c]);
    minus[c].axpy(-eps, v[c]);
  }
  auto const fp = model.residual(plus, u_prev, ht);
  auto const fm = model.residual(minus, u_prev, ht);
  double lhs = 0.0;
  for (int c = 0; c < u.n_components(); ++c) {
    for (std::size_t l = 0; l < fp[c].size(); ++l) { lhs += (fp[c][l] - fm[c][l]) / (2.0 * eps) * p[c][l]; }
  }
  double const rhs = rdpdhg::dot(v, model.jacobian_transpose_apply(u, p, ht));
  return {lhs, rhs};
}

/// Iteration matrix of linear PDHG with G = I on F(U) = A U - b, acting on (U - U*, P).
inline Eigen::MatrixXd pdhg_iteration_matrix(Eigen::MatrixXd const &A, double tau_u, double tau_p, double omega)
{
  auto const m = A.rows();
  Eigen::MatrixXd const I = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd M(2 * m, 2 * m);
  M.topLeftCorner(m, m) = I - (1.0 + omega) * tau_u * tau_p * A.transpose() * A;
  M.topRightCorner(m, m) = -tau_u * A.transpose();
  M.bottomLeftCorner(m, m) = tau_p * A;
  M.bottomRightCorner(m, m) = I;
  return M;
}

inline double spectral_radius(Eigen::MatrixXd const &M)
{
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Root of sqrt(1 - eta / kappa^2) = eta - 1 + sqrt(eta^2 - eta) by bisection on [1, min(4/3, kappa^2)].
inline double eta_by_bisection(double kappa)
{
  double const k2 = kappa * kappa;
  auto g = [&](double eta) { return std::sqrt(std::max(0.0, 1.0 - eta / k2)) - (eta - 1.0 + std::sqrt(eta * eta - eta)); };
  double lo = 1.0;
  double hi = std::min(4.0 / 3.0, k2);
  for (int it = 0; it < 200; ++it) {
    double const mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double eta_equation_residual(double eta, double kappa)
{
  return std::sqrt(std::max(0.0, 1.0 - eta / (kappa * kappa))) - (eta - 1.0 + std::sqrt(eta * eta - eta));
}

} // namespace oracle
