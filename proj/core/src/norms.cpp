#include "ldgs/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ldgs/basis_quadrature.hpp"
#include "ldgs/errors.hpp"

namespace ldgs {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::optional<double> rate_shishkin(double e_N, double e_2N, int N) {
  if (!(e_N > 0.0) || !(e_2N > 0.0) || N < 2 || !std::isfinite(e_N) || !std::isfinite(e_2N)) return std::nullopt;
  const double n = static_cast<double>(N);
  return (std::log(e_N) - std::log(e_2N)) / std::log(2.0 * std::log(n) / std::log(2.0 * n));
}

namespace {

struct Weights {
  double q;
  double boundary;
  double interface;
};

Weights energy_weights(double eps) { return {1.0 / eps, std::sqrt(eps), 1.0 / std::sqrt(eps)}; }
Weights balanced_weights(double eps) { return {std::pow(eps, -1.5), 1.0, 1.0 / eps}; }

NormBreakdown finish(double q, double u, double bj, double ij) {
  NormBreakdown nb{q, u, bj, ij, 0.0};
  nb.total = std::sqrt(nb.squared());
  return nb;
}

double modal_sq_1d(const DGFunction1D& f, const Mesh1D& mesh, int c) {
  double s = 0.0;
  for (int n = 0; n <= f.degree(); ++n) s += ReferenceBasis::mass(n) * f.coeff(c, n) * f.coeff(c, n);
  return s * mesh.cell(c).jacobian();
}

double modal_sq_2d(const DGFunction2D& f, const Mesh2D& mesh, int cx, int cy) {
  double s = 0.0;
  for (int m = 0; m <= f.degree(); ++m) {
    for (int n = 0; n <= f.degree(); ++n) {
      const double c = f.coeff(cx, cy, m, n);
      s += ReferenceBasis::mass(m) * ReferenceBasis::mass(n) * c * c;
    }
  }
  return s * mesh.x().cell(cx).jacobian() * mesh.y().cell(cy).jacobian();
}

NormBreakdown discrete_norm_1d(const MixedSolution1D& V, const Problem1D& problem, const Mesh1D& mesh,
                               const Weights& w) {
  const int n = mesh.cells();
  const QuadratureRule& rule = gauss_rule(assembly_points(V.U.degree()));
  std::vector<double> qc(static_cast<std::size_t>(n));
  std::vector<double> uc(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    qc[static_cast<std::size_t>(c)] = modal_sq_1d(V.Q, mesh, c);
    const CellMap cell = mesh.cell(c);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double u = V.U.value_ref(c, rule.points[q]);
      s += rule.weights[q] * problem.b(cell.to_physical(rule.points[q])) * u * u;
    }
    uc[static_cast<std::size_t>(c)] = s * cell.jacobian();
  }
  const double j0 = V.U.jump(0);
  const double jn = V.U.jump(n);
  const double jq = V.Q.jump(mesh.interface_node());
  return finish(w.q * pairwise_sum(qc), pairwise_sum(uc), w.boundary * (j0 * j0 + jn * jn), w.interface * jq * jq);
}

// Integral over the line x_node (d = 0) or y_node (d = 1) of g(minus, plus)
// where minus/plus are the one-sided traces of f; absent sides are zero.
template <class G>
double line_integral(const DGFunction2D& f, const Mesh1D& m1, int d, int node, const QuadratureRule& rule, G g) {
  const int n = f.cells_per_axis();
  std::vector<double> parts(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double tt = rule.points[q];
      double minus = 0.0;
      double plus = 0.0;
      if (node > 0) minus = d == 0 ? f.value_ref(node - 1, t, 1.0, tt) : f.value_ref(t, node - 1, tt, 1.0);
      if (node < n) plus = d == 0 ? f.value_ref(node, t, -1.0, tt) : f.value_ref(t, node, tt, -1.0);
      s += rule.weights[q] * g(minus, plus);
    }
    parts[static_cast<std::size_t>(t)] = s * m1.cell(t).jacobian();
  }
  return pairwise_sum(parts);
}

double jump_sq(double minus, double plus) { return (minus - plus) * (minus - plus); }

// Boundary jump and interface jump integrals shared by the discrete norm and
// the error norm (the exact solution contributes nothing to either).
std::pair<double, double> jump_terms_2d(const MixedSolution2D& V, const Mesh2D& mesh) {
  const int n = mesh.cells_per_axis();
  const QuadratureRule& rule = gauss_rule(assembly_points(V.U.degree()));
  const Mesh1D& m1 = mesh.x();
  double bj = 0.0;
  for (int d = 0; d < 2; ++d) {
    bj += line_integral(V.U, m1, d, 0, rule, jump_sq);
    bj += line_integral(V.U, m1, d, n, rule, jump_sq);
  }
  const int ni = mesh.x().interface_node();
  const double ij = line_integral(V.P, m1, 0, ni, rule, jump_sq) + line_integral(V.Q, m1, 1, ni, rule, jump_sq);
  return {bj, ij};
}

NormBreakdown discrete_norm_2d(const MixedSolution2D& V, const Problem2D& problem, const Mesh2D& mesh,
                               const Weights& w) {
  const int n = mesh.cells_per_axis();
  const QuadratureRule& rule = gauss_rule(assembly_points(V.U.degree()));
  std::vector<double> qc(static_cast<std::size_t>(n * n));
  std::vector<double> uc(static_cast<std::size_t>(n * n));
  for (int cy = 0; cy < n; ++cy) {
    const CellMap yc = mesh.y().cell(cy);
    for (int cx = 0; cx < n; ++cx) {
      const CellMap xc = mesh.x().cell(cx);
      const auto id = static_cast<std::size_t>(cy * n + cx);
      qc[id] = modal_sq_2d(V.P, mesh, cx, cy) + modal_sq_2d(V.Q, mesh, cx, cy);
      double s = 0.0;
      for (std::size_t qx = 0; qx < rule.size(); ++qx) {
        for (std::size_t qy = 0; qy < rule.size(); ++qy) {
          const double u = V.U.value_ref(cx, cy, rule.points[qx], rule.points[qy]);
          s += rule.weights[qx] * rule.weights[qy] *
               problem.b(xc.to_physical(rule.points[qx]), yc.to_physical(rule.points[qy])) * u * u;
        }
      }
      uc[id] = s * xc.jacobian() * yc.jacobian();
    }
  }
  const auto [bj, ij] = jump_terms_2d(V, mesh);
  return finish(w.q * pairwise_sum(qc), pairwise_sum(uc), w.boundary * bj, w.interface * ij);
}

}  // namespace

NormBreakdown energy_norm_1d(const MixedSolution1D& V, const Problem1D& problem, const Mesh1D& mesh) {
  return discrete_norm_1d(V, problem, mesh, energy_weights(problem.eps));
}

NormBreakdown balanced_norm_1d(const MixedSolution1D& V, const Problem1D& problem, const Mesh1D& mesh) {
  return discrete_norm_1d(V, problem, mesh, balanced_weights(problem.eps));
}

NormBreakdown energy_norm_2d(const MixedSolution2D& V, const Problem2D& problem, const Mesh2D& mesh) {
  return discrete_norm_2d(V, problem, mesh, energy_weights(problem.eps));
}

NormBreakdown balanced_norm_2d(const MixedSolution2D& V, const Problem2D& problem, const Mesh2D& mesh) {
  return discrete_norm_2d(V, problem, mesh, balanced_weights(problem.eps));
}

ErrorNorms error_norms_1d(const MixedSolution1D& W, const Problem1D& problem, const Mesh1D& mesh, int quad_points) {
  if (!problem.has_exact()) throw ConfigError("error_norms_1d: problem '" + problem.name + "' has no exact solution");
  const int n = mesh.cells();
  const QuadratureRule& rule = gauss_rule(quad_points > 0 ? quad_points : error_points(W.U.degree()));
  std::vector<double> qc(static_cast<std::size_t>(n));
  std::vector<double> uc(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const CellMap cell = mesh.cell(c);
    double sq = 0.0;
    double su = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = rule.points[q];
      const double x = cell.to_physical(t);
      const double eq = problem.q_exact(x) - W.Q.value_ref(c, t);
      const double eu = (*problem.u_exact)(x) - W.U.value_ref(c, t);
      sq += rule.weights[q] * eq * eq;
      su += rule.weights[q] * problem.b(x) * eu * eu;
    }
    qc[static_cast<std::size_t>(c)] = sq * cell.jacobian();
    uc[static_cast<std::size_t>(c)] = su * cell.jacobian();
  }
  const double q = pairwise_sum(qc);
  const double u = pairwise_sum(uc);
  // u(0) = u(1) = 0 and q is continuous, so only discrete traces remain.
  const double u0 = W.U.left_trace(0);
  const double un = W.U.right_trace(n - 1);
  const double bj = u0 * u0 + un * un;
  const double jq = W.Q.jump(mesh.interface_node());
  const double ij = jq * jq;

  const Weights we = energy_weights(problem.eps);
  const Weights wb = balanced_weights(problem.eps);
  return {finish(we.q * q, u, we.boundary * bj, we.interface * ij), finish(wb.q * q, u, wb.boundary * bj, wb.interface * ij)};
}

ErrorNorms error_norms_2d(const MixedSolution2D& W, const Problem2D& problem, const Mesh2D& mesh, int quad_points) {
  if (!problem.has_exact()) throw ConfigError("error_norms_2d: problem '" + problem.name + "' has no exact solution");
  const int n = mesh.cells_per_axis();
  const QuadratureRule& rule = gauss_rule(quad_points > 0 ? quad_points : error_points(W.U.degree()));
  std::vector<double> qc(static_cast<std::size_t>(n * n));
  std::vector<double> uc(static_cast<std::size_t>(n * n));
  for (int cy = 0; cy < n; ++cy) {
    const CellMap yc = mesh.y().cell(cy);
    for (int cx = 0; cx < n; ++cx) {
      const CellMap xc = mesh.x().cell(cx);
      double sq = 0.0;
      double su = 0.0;
      for (std::size_t qx = 0; qx < rule.size(); ++qx) {
        const double tx = rule.points[qx];
        const double x = xc.to_physical(tx);
        for (std::size_t qy = 0; qy < rule.size(); ++qy) {
          const double ty = rule.points[qy];
          const double y = yc.to_physical(ty);
          const double w = rule.weights[qx] * rule.weights[qy];
          const double ep = problem.p_exact(x, y) - W.P.value_ref(cx, cy, tx, ty);
          const double eq = problem.q_exact(x, y) - W.Q.value_ref(cx, cy, tx, ty);
          const double eu = (*problem.u_exact)(x, y) - W.U.value_ref(cx, cy, tx, ty);
          sq += w * (ep * ep + eq * eq);
          su += w * problem.b(x, y) * eu * eu;
        }
      }
      const auto id = static_cast<std::size_t>(cy * n + cx);
      qc[id] = sq * xc.jacobian() * yc.jacobian();
      uc[id] = su * xc.jacobian() * yc.jacobian();
    }
  }
  const double q = pairwise_sum(qc);
  const double u = pairwise_sum(uc);
  const auto [bj, ij] = jump_terms_2d(W, mesh);

  const Weights we = energy_weights(problem.eps);
  const Weights wb = balanced_weights(problem.eps);
  return {finish(we.q * q, u, we.boundary * bj, we.interface * ij), finish(wb.q * q, u, wb.boundary * bj, wb.interface * ij)};
}

double l2_error_1d(const DGFunction1D& V, const Fn1& v, const Mesh1D& mesh, CellRange cells, int quad_points) {
  const QuadratureRule& rule = gauss_rule(quad_points > 0 ? quad_points : error_points(V.degree()));
  std::vector<double> parts;
  parts.reserve(static_cast<std::size_t>(std::max(0, cells.last - cells.first)));
  for (int c = cells.first; c < cells.last; ++c) {
    const CellMap cell = mesh.cell(c);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double e = v(cell.to_physical(rule.points[q])) - V.value_ref(c, rule.points[q]);
      s += rule.weights[q] * e * e;
    }
    parts.push_back(s * cell.jacobian());
  }
  return std::sqrt(pairwise_sum(parts));
}

double linf_error_1d(const DGFunction1D& V, const Fn1& v, const Mesh1D& mesh, CellRange cells, int quad_points) {
  const QuadratureRule& rule = gauss_rule(quad_points > 0 ? quad_points : error_points(V.degree()));
  double worst = 0.0;
  for (int c = cells.first; c < cells.last; ++c) {
    const CellMap cell = mesh.cell(c);
    auto probe = [&](double t) { worst = std::max(worst, std::abs(v(cell.to_physical(t)) - V.value_ref(c, t))); };
    probe(-1.0);
    probe(1.0);
    for (const double t : rule.points) probe(t);
  }
  return worst;
}

}  // namespace ldgs
