#pragma once

// Energy and balanced norms of discrete functions and of discretization
// errors, in 1D and 2D, plus the Shishkin convergence rate.
//
// 1D, with [[v]]_0 = -v_0^+ and [[v]]_N = v_N^-:
//   energy^2   = eps^-1 |q|^2   + |b^1/2 u|^2 + sqrt(eps) sum_{0,N} [[u]]^2 + eps^-1/2 [[q]]_{3N/4}^2
//   balanced^2 = eps^-3/2 |q|^2 + |b^1/2 u|^2 +           sum_{0,N} [[u]]^2 + eps^-1   [[q]]_{3N/4}^2
// 2D: the same with both flux components and edge integrals over the
// boundary and over the lines x = x_{3N/4}, y = y_{3N/4}.

#include <optional>
#include <span>
#include <utility>

#include "ldgs/dg_function.hpp"
#include "ldgs/ldg1d.hpp"
#include "ldgs/ldg2d.hpp"
#include "ldgs/problems.hpp"
#include "ldgs/shishkin_mesh.hpp"

namespace ldgs {

/// Squared contributions; total is the square root of their sum.
struct NormBreakdown {
  double q_term = 0.0;
  double u_term = 0.0;
  double boundary_jump_term = 0.0;
  double interface_jump_term = 0.0;
  double total = 0.0;

  [[nodiscard]] double squared() const noexcept {
    return q_term + u_term + boundary_jump_term + interface_jump_term;
  }
};

struct ErrorNorms {
  NormBreakdown energy;
  NormBreakdown balanced;
};

/// Pairwise (cascade) summation; order-deterministic.
double pairwise_sum(std::span<const double> v);

NormBreakdown energy_norm_1d(const MixedSolution1D& V, const Problem1D& problem, const Mesh1D& mesh);
NormBreakdown balanced_norm_1d(const MixedSolution1D& V, const Problem1D& problem, const Mesh1D& mesh);

/// quad_points = 0 -> error_points(k). Throws ConfigError without exact handles.
ErrorNorms error_norms_1d(const MixedSolution1D& W, const Problem1D& problem, const Mesh1D& mesh, int quad_points = 0);

NormBreakdown energy_norm_2d(const MixedSolution2D& V, const Problem2D& problem, const Mesh2D& mesh);
NormBreakdown balanced_norm_2d(const MixedSolution2D& V, const Problem2D& problem, const Mesh2D& mesh);
ErrorNorms error_norms_2d(const MixedSolution2D& W, const Problem2D& problem, const Mesh2D& mesh, int quad_points = 0);

/// r = (ln e_N - ln e_2N) / ln(2 ln N / ln 2N); empty unless both errors are
/// positive and N >= 2.
std::optional<double> rate_shishkin(double e_N, double e_2N, int N);

/// Cells [first, last) of a 1D mesh, 0-based.
struct CellRange {
  int first;
  int last;
};

/// |v - V|_{L2} over the cell range.
double l2_error_1d(const DGFunction1D& V, const Fn1& v, const Mesh1D& mesh, CellRange cells, int quad_points = 0);

/// max |v - V| over the cell range, sampled at Gauss points and both cell ends.
double linf_error_1d(const DGFunction1D& V, const Fn1& v, const Mesh1D& mesh, CellRange cells, int quad_points = 0);

}  // namespace ldgs
