#include "ldgs/ldg1d.hpp"

#include <algorithm>
#include <cmath>

#include "ldgs/basis_quadrature.hpp"
#include "ldgs/errors.hpp"

namespace ldgs {

FluxParams FluxParams::standard(double eps, int cells) {
  const double s = std::sqrt(eps);
  return {s, s, 1.0 / s, 3 * cells / 4};
}

std::size_t dof_q(int cell, int mode, int degree) {
  return static_cast<std::size_t>(cell) * static_cast<std::size_t>(2 * (degree + 1)) + static_cast<std::size_t>(mode);
}

std::size_t dof_u(int cell, int mode, int degree) {
  return dof_q(cell, mode, degree) + static_cast<std::size_t>(degree + 1);
}

namespace {

void check_inputs(const Mesh1D& mesh, int k) {
  if (k < 1) throw ConfigError("LDG: degree must be >= 1");
  if (mesh.cells() < 4 || mesh.cells() % 4 != 0) throw ConfigError("LDG: N must be a positive multiple of 4");
}

int points_or_default(int quad_points, int k) { return quad_points > 0 ? quad_points : assembly_points(k); }

}  // namespace

AssembledSystem assemble_1d(const Problem1D& problem, const Mesh1D& mesh, int k, int quad_points) {
  check_inputs(mesh, k);
  const int n = mesh.cells();
  const int nm = k + 1;
  const double eps = problem.eps;
  const double s = std::sqrt(eps);
  const FluxParams flux = FluxParams::standard(eps, n);
  const ReferenceBasis basis(k);
  const QuadratureRule& rule = gauss_rule(points_or_default(quad_points, k));

  AssembledSystem sys;
  sys.cells = n;
  sys.degree = k;
  sys.q_scale = s;
  sys.rhs.assign(static_cast<std::size_t>(2 * n * nm), 0.0);
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(n * nm * nm * 14));
  auto add = [&](std::size_t r, std::size_t c, double v) {
    if (v != 0.0) trips.push_back({r, c, v});
  };

  auto sign_left = [](int a) { return ReferenceBasis::left_value(a); };

  // coef * Uhat_j into row r (the row already carries the factor s).
  auto add_uhat = [&](std::size_t r, int j, double coef) {
    if (j == 0 || j == n) return;
    for (int a = 0; a < nm; ++a) add(r, dof_u(j - 1, a, k), coef);
    if (j == flux.interface_node) {
      // -lambda_q [[Q]]_j with Q = s Qs.
      const double lq = -coef * flux.lambda_q * s;
      for (int a = 0; a < nm; ++a) {
        add(r, dof_q(j - 1, a, k), lq);
        add(r, dof_q(j, a, k), -lq * sign_left(a));
      }
    }
  };

  // coef * Qhat_j into row r.
  auto add_qhat = [&](std::size_t r, int j, double coef) {
    if (j == 0) {
      for (int a = 0; a < nm; ++a) {
        add(r, dof_q(0, a, k), coef * s * sign_left(a));
        add(r, dof_u(0, a, k), coef * flux.lambda_0 * sign_left(a));
      }
    } else if (j == n) {
      for (int a = 0; a < nm; ++a) {
        add(r, dof_q(n - 1, a, k), coef * s);
        add(r, dof_u(n - 1, a, k), -coef * flux.lambda_N);
      }
    } else {
      for (int a = 0; a < nm; ++a) add(r, dof_q(j, a, k), coef * s * sign_left(a));
    }
  };

  std::vector<double> p(static_cast<std::size_t>(nm));
  for (int c = 0; c < n; ++c) {
    const CellMap cell = mesh.cell(c);
    const double jac = cell.jacobian();

    // First equation, scaled by s:
    //   <Qs, r> + s <U, r'> - s Uhat_{c+1} r^- + s Uhat_c r^+ = 0
    for (int m = 0; m < nm; ++m) {
      const std::size_t row = dof_q(c, m, k);
      add(row, dof_q(c, m, k), jac * ReferenceBasis::mass(m));
      for (int a = 0; a < nm; ++a) add(row, dof_u(c, a, k), s * basis.stiffness(a, m));
      add_uhat(row, c + 1, -s);
      add_uhat(row, c, s * sign_left(m));
    }

    // Second equation:
    //   s <Qs, v'> + <b U, v> - Qhat_{c+1} v^- + Qhat_c v^+ = <f, v>
    std::vector<double> bm(static_cast<std::size_t>(nm * nm), 0.0);
    std::vector<double> fm(static_cast<std::size_t>(nm), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      legendre_values(k, rule.points[q], p);
      const double x = cell.to_physical(rule.points[q]);
      const double wb = rule.weights[q] * jac * problem.b(x);
      const double wf = rule.weights[q] * jac * problem.f(x);
      for (int m = 0; m < nm; ++m) {
        fm[static_cast<std::size_t>(m)] += wf * p[static_cast<std::size_t>(m)];
        for (int a = 0; a < nm; ++a) {
          bm[static_cast<std::size_t>(m * nm + a)] += wb * p[static_cast<std::size_t>(m)] * p[static_cast<std::size_t>(a)];
        }
      }
    }
    for (int m = 0; m < nm; ++m) {
      const std::size_t row = dof_u(c, m, k);
      for (int a = 0; a < nm; ++a) {
        add(row, dof_q(c, a, k), s * basis.stiffness(a, m));
        add(row, dof_u(c, a, k), bm[static_cast<std::size_t>(m * nm + a)]);
      }
      add_qhat(row, c + 1, -1.0);
      add_qhat(row, c, sign_left(m));
      sys.rhs[row] = fm[static_cast<std::size_t>(m)];
    }
  }

  const std::size_t dim = sys.rhs.size();
  sys.matrix = SparseMatrix::from_triplets(dim, dim, std::move(trips));
  sys.lower_bandwidth = sys.matrix.lower_bandwidth();
  sys.upper_bandwidth = sys.matrix.upper_bandwidth();
  return sys;
}

MixedSolution1D unpack_1d(const AssembledSystem& sys, const std::vector<double>& x) {
  const int n = sys.cells;
  const int k = sys.degree;
  MixedSolution1D w{DGFunction1D(n, k), DGFunction1D(n, k), 0.0};
  for (int c = 0; c < n; ++c) {
    for (int m = 0; m <= k; ++m) {
      w.Q.coeff(c, m) = sys.q_scale * x[dof_q(c, m, k)];
      w.U.coeff(c, m) = x[dof_u(c, m, k)];
    }
  }
  return w;
}

MixedSolution1D solve_ldg_1d(const Problem1D& problem, const Mesh1D& mesh, int k, const SolverOptions& opt) {
  if (opt.kind == SolverKind::condensed) {
    throw ConfigError("solve_ldg_1d: the 1D solver is monolithic banded; condensation applies to 2D only");
  }
  const AssembledSystem sys = assemble_1d(problem, mesh, k, opt.quad_points);
  const SolveResult res = banded_solve(sys.matrix, sys.rhs);
  const double tol = opt.max_residual > 0.0 ? opt.max_residual : 1e-10;
  if (!(res.residual <= tol)) {
    throw NumericalError("solve_ldg_1d: residual " + std::to_string(res.residual) + " above tolerance", res.residual);
  }
  MixedSolution1D w = unpack_1d(sys, res.x);
  w.residual = res.residual;
  return w;
}

double apply_B_1d(const MixedSolution1D& W, const MixedSolution1D& X, const Problem1D& problem, const Mesh1D& mesh,
                  int quad_points) {
  const int n = mesh.cells();
  const int k = std::max(W.U.degree(), X.U.degree());
  const double eps = problem.eps;
  const FluxParams flux = FluxParams::standard(eps, n);
  const QuadratureRule& rule = gauss_rule(points_or_default(quad_points, k));

  const DGFunction1D& Q = W.Q;
  const DGFunction1D& U = W.U;
  const DGFunction1D& r = X.Q;
  const DGFunction1D& v = X.U;

  double volume = 0.0;
  for (int c = 0; c < n; ++c) {
    const CellMap cell = mesh.cell(c);
    const double jac = cell.jacobian();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = rule.points[q];
      const double x = cell.to_physical(t);
      const double w = rule.weights[q] * jac;
      const double Qv = Q.value_ref(c, t);
      const double Uv = U.value_ref(c, t);
      const double rv = r.value_ref(c, t);
      const double vv = v.value_ref(c, t);
      const double dr = r.derivative_ref(c, t) / jac;
      const double dv = v.derivative_ref(c, t) / jac;
      volume += w * (Qv * rv / eps + problem.b(x) * Uv * vv + Uv * dr + Qv * dv);
    }
  }

  double faces = 0.0;
  for (int i = 1; i < n; ++i) faces -= U.right_trace(i - 1) * r.jump(i);
  for (int i = 0; i < n; ++i) faces -= Q.left_trace(i) * v.jump(i);
  faces -= Q.right_trace(n - 1) * v.right_trace(n - 1);
  faces += flux.lambda_0 * U.jump(0) * v.jump(0);
  faces += flux.lambda_N * U.jump(n) * v.jump(n);
  faces += flux.lambda_q * Q.jump(flux.interface_node) * r.jump(flux.interface_node);
  return volume + faces;
}

double load_1d(const MixedSolution1D& X, const Problem1D& problem, const Mesh1D& mesh, int quad_points) {
  const int k = X.U.degree();
  const QuadratureRule& rule = gauss_rule(points_or_default(quad_points, k));
  double s = 0.0;
  for (int c = 0; c < mesh.cells(); ++c) {
    const CellMap cell = mesh.cell(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = rule.points[q];
      s += rule.weights[q] * cell.jacobian() * problem.f(cell.to_physical(t)) * X.U.value_ref(c, t);
    }
  }
  return s;
}

}  // namespace ldgs
