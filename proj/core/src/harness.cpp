#include "ldgs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <tuple>

#include "ldgs/errors.hpp"
#include "ldgs/ldg2d.hpp"
#include "ldgs/norms.hpp"
#include "ldgs/problems.hpp"
#include "ldgs/projections.hpp"
#include "ldgs/shishkin_mesh.hpp"

namespace ldgs {

NormSelection parse_norm_selection(const std::string& s) {
  if (s == "energy") return NormSelection::energy;
  if (s == "balanced") return NormSelection::balanced;
  if (s == "both") return NormSelection::both;
  throw ConfigError("unknown norm selection '" + s + "'");
}

Study parse_study(const std::string& s) {
  if (s == "solve") return Study::solve;
  if (s == "projection") return Study::projection;
  throw ConfigError("unknown study '" + s + "'");
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "markdown") return OutputFormat::markdown;
  throw ConfigError("unknown output format '" + s + "'");
}

SolverKind parse_solver_kind(const std::string& s) {
  if (s == "banded") return SolverKind::banded;
  if (s == "condensed") return SolverKind::condensed;
  if (s == "auto") return SolverKind::automatic;
  throw ConfigError("unknown solver '" + s + "'");
}

void SweepConfig::validate() const {
  if (dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
  if (degrees.empty() || cells.empty() || eps.empty()) throw ConfigError("k, N and eps lists must be nonempty");
  if (problem_dimension(problem) != dimension) {
    throw ConfigError("problem '" + problem + "' is not a " + std::to_string(dimension) + "D problem");
  }
  if (study == Study::projection && dimension != 1) throw ConfigError("the projection study is 1D only");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < 4 || cells[i] % 4 != 0) throw ConfigError("N = " + std::to_string(cells[i]) + " is not a positive multiple of 4");
    if (i > 0 && cells[i] != 2 * cells[i - 1]) throw ConfigError("N list must double strictly");
  }
  for (const double e : eps) {
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("eps must lie in (0, 1]");
  }
  for (const int k : degrees) {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (sigma_for(k) < k + 1.0) throw ConfigError("sigma must be >= k+1 (k = " + std::to_string(k) + ")");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (quad_points < 0) throw ConfigError("quadrature order must be >= 0");
}

std::size_t ConvergenceTable::metric_index(const std::string& name) const {
  const auto it = std::find(metrics.begin(), metrics.end(), name);
  if (it == metrics.end()) throw ConfigError("no metric '" + name + "' in table");
  return static_cast<std::size_t>(it - metrics.begin());
}

bool ConvergenceTable::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const RateRow& r) { return r.failed(); });
}

std::vector<const RateRow*> ConvergenceTable::group(int k, double eps) const {
  std::vector<const RateRow*> out;
  for (const RateRow& r : rows) {
    if (r.k == k && r.eps == eps) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](const RateRow* a, const RateRow* b) { return a->N < b->N; });
  return out;
}

void attach_rates(ConvergenceTable& table) {
  std::sort(table.rows.begin(), table.rows.end(), [](const RateRow& a, const RateRow& b) {
    return std::make_tuple(a.k, -a.eps, a.N) < std::make_tuple(b.k, -b.eps, b.N);
  });
  const std::size_t nm = table.metrics.size();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    RateRow& row = table.rows[i];
    row.rates.assign(nm, std::nullopt);
    if (i + 1 >= table.rows.size()) continue;
    const RateRow& next = table.rows[i + 1];
    if (next.k != row.k || next.eps != row.eps || next.N != 2 * row.N) continue;
    if (row.clamped || next.clamped) continue;
    for (std::size_t m = 0; m < nm; ++m) {
      if (row.errors[m] && next.errors[m]) row.rates[m] = rate_shishkin(*row.errors[m], *next.errors[m], row.N);
    }
  }
}

namespace {

struct Task {
  int k;
  int N;
  double eps;
};

std::vector<Task> tasks_of(const SweepConfig& cfg) {
  std::vector<Task> tasks;
  for (const int k : cfg.degrees) {
    for (const double e : cfg.eps) {
      for (const int n : cfg.cells) tasks.push_back({k, n, e});
    }
  }
  return tasks;
}

// Runs fn over every task with at most cfg.workers concurrent threads; the
// output order follows the task list.
std::vector<RateRow> run_parallel(const std::vector<Task>& tasks, int workers,
                                  const std::function<RateRow(const Task&)>& fn) {
  std::vector<RateRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) rows[i] = fn(tasks[i]);
  };
  const auto count = static_cast<std::size_t>(std::max(1, workers));
  if (count == 1) {
    worker();
    return rows;
  }
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < std::min(count, tasks.size()); ++w) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return rows;
}

RateRow base_row(const SweepConfig& cfg, const Task& t, std::size_t metrics) {
  RateRow row;
  row.k = t.k;
  row.N = t.N;
  row.eps = t.eps;
  row.sigma = cfg.sigma_for(t.k);
  row.errors.assign(metrics, std::nullopt);
  row.rates.assign(metrics, std::nullopt);
  return row;
}

MeshConfig mesh_config(const RateRow& row, double beta) { return {row.N, row.eps, row.sigma, beta}; }

RateRow solve_one(const SweepConfig& cfg, const Task& t) {
  RateRow row = base_row(cfg, t, 2);
  const bool want_e = cfg.norms != NormSelection::balanced;
  const bool want_b = cfg.norms != NormSelection::energy;
  try {
    ErrorNorms err;
    if (cfg.dimension == 1) {
      const Problem1D p = make_problem_1d(cfg.problem, t.eps, t.k);
      const Mesh1D mesh = build_shishkin_1d(mesh_config(row, p.beta));
      row.clamped = mesh.clamped();
      const MixedSolution1D w = solve_ldg_1d(p, mesh, t.k, cfg.solver);
      row.residual = w.residual;
      err = error_norms_1d(w, p, mesh, cfg.quad_points);
    } else {
      const Problem2D p = make_problem_2d(cfg.problem, t.eps);
      const Mesh2D mesh = build_shishkin_2d(mesh_config(row, p.beta));
      row.clamped = mesh.clamped();
      const MixedSolution2D w = solve_ldg_2d(p, mesh, t.k, cfg.solver);
      row.residual = w.residual;
      err = error_norms_2d(w, p, mesh, cfg.quad_points);
    }
    if (want_e) row.errors[0] = err.energy.total;
    if (want_b) row.errors[1] = err.balanced.total;
  } catch (const NumericalError& e) {
    row.residual = e.residual();
    row.failure = e.what();
  } catch (const std::exception& e) {
    row.failure = e.what();
  }
  return row;
}

RateRow project_one(const SweepConfig& cfg, const Task& t) {
  RateRow row = base_row(cfg, t, 5);
  try {
    const Problem1D p = make_problem_1d(cfg.problem, t.eps, t.k);
    if (!p.has_exact()) throw ConfigError("projection study needs an exact solution");
    const Mesh1D mesh = build_shishkin_1d(mesh_config(row, p.beta));
    row.clamped = mesh.clamped();
    const Fn1 u = *p.u_exact;
    const Fn1 q = [&p](double x) { return p.q_exact(x); };
    const DGFunction1D pu = composite_P_minus_1d(u, p.b, mesh, t.k);
    const DGFunction1D pq = composite_P_plus_1d(q, mesh, t.k);
    const int n = t.N;
    const int qp = cfg.quad_points;
    const CellRange left{0, n / 4};
    const CellRange coarse{n / 4, 3 * n / 4};
    const CellRange right{3 * n / 4, n};
    const CellRange all{0, n};
    auto l2_sum = [&](const DGFunction1D& V, const Fn1& f, CellRange a, CellRange b) {
      return std::hypot(l2_error_1d(V, f, mesh, a, qp), l2_error_1d(V, f, mesh, b, qp));
    };
    row.errors[0] = std::pow(t.eps, -0.25) * l2_sum(pu, u, left, right);
    row.errors[1] = std::pow(t.eps, -0.75) * l2_error_1d(pq, q, mesh, all, qp);
    row.errors[2] = linf_error_1d(pu, u, mesh, coarse, qp);
    row.errors[3] = std::pow(t.eps, -0.5) *
                    std::max(linf_error_1d(pq, q, mesh, left, qp), linf_error_1d(pq, q, mesh, right, qp));
    row.errors[4] = linf_error_1d(pq, q, mesh, coarse, qp);
  } catch (const std::exception& e) {
    row.failure = e.what();
  }
  return row;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string opt_float(const std::optional<double>& v) { return v ? fmt("%.5e", *v) : std::string(); }
std::string opt_rate(const std::optional<double>& v) { return v ? fmt("%.2f", *v) : std::string(); }

}  // namespace

ConvergenceTable run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  if (cfg.study == Study::projection) return run_projection_study(cfg);
  ConvergenceTable table;
  table.metrics = {"energy", "balanced"};
  table.rows = run_parallel(tasks_of(cfg), cfg.workers, [&](const Task& t) { return solve_one(cfg, t); });
  attach_rates(table);
  return table;
}

ConvergenceTable run_projection_study(const SweepConfig& cfg) {
  SweepConfig c = cfg;
  c.study = Study::projection;
  c.validate();
  ConvergenceTable table;
  table.metrics = {"u_layer", "q_scaled", "u_coarse_inf", "q_layer_inf", "q_coarse_inf"};
  table.rows = run_parallel(tasks_of(c), c.workers, [&](const Task& t) { return project_one(c, t); });
  attach_rates(table);
  return table;
}

void emit_table(const ConvergenceTable& table, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::csv) {
    os << "k,N,eps,sigma";
    for (const auto& m : table.metrics) os << ",err_" << m << ",rate_" << m;
    os << ",clamped,residual\n";
    for (const RateRow& r : table.rows) {
      os << r.k << ',' << r.N << ',' << fmt("%.5e", r.eps) << ',' << fmt("%.5e", r.sigma);
      for (std::size_t m = 0; m < table.metrics.size(); ++m) {
        os << ',' << opt_float(r.errors[m]) << ',' << opt_rate(r.rates[m]);
      }
      os << ',' << (r.clamped ? 1 : 0) << ',' << opt_float(r.residual) << '\n';
    }
    return;
  }

  std::vector<std::pair<int, double>> groups;
  for (const RateRow& r : table.rows) {
    if (groups.empty() || groups.back() != std::make_pair(r.k, r.eps)) groups.emplace_back(r.k, r.eps);
  }
  for (const auto& [k, eps] : groups) {
    os << "### k = " << k << ", eps = " << fmt("%.0e", eps) << "\n\n| N |";
    for (const auto& m : table.metrics) os << ' ' << m << " | rate |";
    os << "\n|---:|";
    for (std::size_t m = 0; m < table.metrics.size(); ++m) os << "---:|---:|";
    os << '\n';
    for (const RateRow* r : table.group(k, eps)) {
      os << "| " << r->N << (r->clamped ? "*" : "") << " |";
      for (std::size_t m = 0; m < table.metrics.size(); ++m) {
        os << ' ' << (r->failed() ? std::string("failed") : opt_float(r->errors[m])) << " | " << opt_rate(r->rates[m]) << " |";
      }
      os << '\n';
    }
    os << '\n';
  }
}

void write_table(const ConvergenceTable& table, OutputFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_table(table, format, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace ldgs
