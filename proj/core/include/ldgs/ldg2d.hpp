#pragma once

// LDG discretization of -eps Lap u + b u = f on the tensor Shishkin mesh of
// [0,1]^2, with p = eps u_x and q = eps u_y. Each coordinate direction uses
// the 1D flux pattern: boundary penalty sqrt(eps) on [[U]] in the flux of p
// (resp. q) and the penalty 1/sqrt(eps) on [[P]] (resp. [[Q]]) in Uhat along
// the line x = x_{3N/4} (resp. y = y_{3N/4}).

#include <cstddef>
#include <vector>

#include "ldgs/dg_function.hpp"
#include "ldgs/ldg1d.hpp"
#include "ldgs/linear_solver.hpp"
#include "ldgs/problems.hpp"
#include "ldgs/shishkin_mesh.hpp"

namespace ldgs {

inline constexpr int kMaxCells2D = 64;
inline constexpr int kMaxDegree2D = 2;
inline constexpr int kMaxBandedCells2D = 32;

struct FluxParams2D {
  double lambda_boundary;  // sqrt(eps) on all four sides
  double lambda_P;         // on x = x_{3N/4}
  double lambda_Q;         // on y = y_{3N/4}
  int interface_node;

  static FluxParams2D standard(double eps, int cells);
};

struct MixedSolution2D {
  DGFunction2D U;
  DGFunction2D P;
  DGFunction2D Q;
  double residual = 0.0;
};

enum class Field2D { P = 0, Q = 1, U = 2 };

/// Cell-major layout, x index fastest; within a cell P, Q, U blocks of
/// (k+1)^2 modes, mode (m, n) at m*(k+1)+n.
std::size_t dof_2d(int cells, int k, int cx, int cy, Field2D field, int m, int n);

/// Unknowns (Ps, Qs, U) with P = q_scale Ps, Q = q_scale Qs; the two flux
/// equations are multiplied by q_scale.
AssembledSystem assemble_2d(const Problem2D& problem, const Mesh2D& mesh, int k, int quad_points = 0);

MixedSolution2D unpack_2d(const AssembledSystem& sys, const std::vector<double>& x);

/// Condensed sparse LU by default; SolverKind::banded factors the full
/// system and is limited to N <= 32.
MixedSolution2D solve_ldg_2d(const Problem2D& problem, const Mesh2D& mesh, int k, const SolverOptions& opt = {});

/// B(T; Z) with T = (U, P, Q) trial and Z = (v, s, r) test, by quadrature on
/// cells and edges.
double apply_B_2d(const MixedSolution2D& T, const MixedSolution2D& Z, const Problem2D& problem, const Mesh2D& mesh,
                  int quad_points = 0);

double load_2d(const MixedSolution2D& Z, const Problem2D& problem, const Mesh2D& mesh, int quad_points = 0);

}  // namespace ldgs
