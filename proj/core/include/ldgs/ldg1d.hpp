#pragma once

// LDG discretization of -eps u'' + b u = f on a 1D Shishkin mesh, written as
// the first-order system  q = eps u',  -q' + b u = f.
//
// Fluxes:
//   Qhat_0 = Q_0^+ + lambda_0 U_0^+,  Qhat_N = Q_N^- - lambda_N U_N^-,  Qhat_i = Q_i^+
//   Uhat_0 = Uhat_N = 0,  Uhat_{3N/4} = U^-_{3N/4} - lambda_q [[Q]]_{3N/4},  Uhat_i = U_i^-
// with lambda_0 = lambda_N = sqrt(eps) and lambda_q = 1/sqrt(eps).

#include <cstddef>
#include <vector>

#include "ldgs/dg_function.hpp"
#include "ldgs/linear_solver.hpp"
#include "ldgs/problems.hpp"
#include "ldgs/shishkin_mesh.hpp"

namespace ldgs {

struct FluxParams {
  double lambda_0;
  double lambda_N;
  double lambda_q;
  int interface_node;  // 3N/4

  static FluxParams standard(double eps, int cells);
};

struct MixedSolution1D {
  DGFunction1D U;
  DGFunction1D Q;
  double residual = 0.0;  // relative residual of the linear solve
};

/// Global system in the unknowns (Qs, U) with Q = q_scale * Qs, ordered
/// cell-major and Q modes before U modes within a cell. Rows of the first
/// equation are multiplied by q_scale.
struct AssembledSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
  std::size_t lower_bandwidth = 0;
  std::size_t upper_bandwidth = 0;
  double q_scale = 1.0;
  int cells = 0;
  int degree = 0;
  int fields = 2;

  [[nodiscard]] std::size_t dimension() const noexcept { return rhs.size(); }
};

enum class SolverKind { automatic, banded, condensed };

struct SolverOptions {
  SolverKind kind = SolverKind::automatic;
  int quad_points = 0;          // 0 -> assembly_points(k)
  double max_residual = 0.0;  // NumericalError above this; 0 -> 1e-10 (1D), 1e-9 (2D)
};

/// Unknown index helpers for the 1D layout.
std::size_t dof_q(int cell, int mode, int degree);
std::size_t dof_u(int cell, int mode, int degree);

AssembledSystem assemble_1d(const Problem1D& problem, const Mesh1D& mesh, int k, int quad_points = 0);

MixedSolution1D solve_ldg_1d(const Problem1D& problem, const Mesh1D& mesh, int k, const SolverOptions& opt = {});

/// Unpack a solution vector of assemble_1d into (U, Q).
MixedSolution1D unpack_1d(const AssembledSystem& sys, const std::vector<double>& x);

/// B(W; X) with W = (Q, U) trial and X = (r, v) test, evaluated term by term
/// with quadrature on the physical cells.
double apply_B_1d(const MixedSolution1D& W, const MixedSolution1D& X, const Problem1D& problem,
                  const Mesh1D& mesh, int quad_points = 0);

/// <f, v> for the U-component v of X.
double load_1d(const MixedSolution1D& X, const Problem1D& problem, const Mesh1D& mesh, int quad_points = 0);

}  // namespace ldgs
