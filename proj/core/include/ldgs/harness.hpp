#pragma once

// Convergence sweeps over (k, N, eps): solve, measure errors, attach Shishkin
// rates and emit CSV or Markdown tables. Also the projection-error study for
// the composite projections on the 1D mesh.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldgs/ldg1d.hpp"

namespace ldgs {

enum class NormSelection { energy, balanced, both };
enum class Study { solve, projection };
enum class OutputFormat { csv, markdown };

NormSelection parse_norm_selection(const std::string& s);
Study parse_study(const std::string& s);
OutputFormat parse_output_format(const std::string& s);
SolverKind parse_solver_kind(const std::string& s);

struct SweepConfig {
  int dimension = 1;
  std::string problem = "paper1d";
  std::vector<int> degrees{1};
  std::vector<int> cells{32, 64, 128, 256, 512, 1024};
  std::vector<double> eps{1e-4, 1e-6, 1e-8, 1e-10, 1e-12};
  std::optional<double> sigma;  // empty -> k + 1
  NormSelection norms = NormSelection::both;
  int quad_points = 0;          // error quadrature; 0 -> 2(k+2)
  SolverOptions solver;
  Study study = Study::solve;
  int workers = 1;

  [[nodiscard]] double sigma_for(int k) const { return sigma.value_or(k + 1.0); }
  /// Throws ConfigError: empty lists, N not a multiple of 4 or not strictly
  /// doubling, eps outside (0, 1], sigma < k+1, unknown problem, dimension
  /// mismatch with the problem.
  void validate() const;
};

/// One (k, N, eps) entry. errors/rates are parallel to ConvergenceTable::metrics;
/// an absent error marks a failed or deselected measurement.
struct RateRow {
  int k = 0;
  int N = 0;
  double eps = 0.0;
  double sigma = 0.0;
  std::vector<std::optional<double>> errors;
  std::vector<std::optional<double>> rates;
  bool clamped = false;
  std::optional<double> residual;
  std::string failure;  // empty on success

  [[nodiscard]] bool failed() const noexcept { return !failure.empty(); }
};

struct ConvergenceTable {
  std::vector<std::string> metrics;  // solve study: {"energy", "balanced"}
  std::vector<RateRow> rows;         // sorted by (k, eps descending, N)

  [[nodiscard]] std::size_t metric_index(const std::string& name) const;
  [[nodiscard]] bool any_failed() const;
  /// Rows with the given (k, eps), in increasing N.
  [[nodiscard]] std::vector<const RateRow*> group(int k, double eps) const;
};

/// Sorts rows and fills rates: row N receives the rate from (N, 2N) when the
/// 2N row of the same group exists, both errors are present and neither mesh
/// is clamped.
void attach_rates(ConvergenceTable& table);

ConvergenceTable run_sweep(const SweepConfig& cfg);

/// 1D only. Metrics:
///   u_layer      eps^-1/4 |u - P^- u| on [0, x_{N/4}] and [x_{3N/4}, 1]
///   q_scaled     eps^-3/4 |q - P^+ q|
///   u_coarse_inf |u - P^- u|_inf on the coarse cells
///   q_layer_inf  eps^-1/2 |q - P^+ q|_inf on the fine cells
///   q_coarse_inf |q - P^+ q|_inf on the coarse cells
ConvergenceTable run_projection_study(const SweepConfig& cfg);

/// CSV: k,N,eps,sigma, then err_<m>,rate_<m> per metric, then clamped,residual.
/// Floats at 6 significant digits, rates at 2 decimals, absent values empty.
/// Markdown: one sub-table per (k, eps) group.
void emit_table(const ConvergenceTable& table, OutputFormat format, std::ostream& os);

/// Throws IoError if the file cannot be written.
void write_table(const ConvergenceTable& table, OutputFormat format, const std::string& path);

}  // namespace ldgs
