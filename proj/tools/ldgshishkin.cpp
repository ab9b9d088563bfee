// Command-line driver for LDG convergence sweeps on Shishkin meshes.
//
//   ldgshishkin --dim 1 --problem paper1d --k 1,2 --n 32,64,128 --eps 1e-4,1e-8
//
// Exit status: 0 when every row succeeded, 2 when any row failed, 1 on bad
// arguments or I/O errors.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "ldgs/errors.hpp"
#include "ldgs/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"LDG solver for singularly perturbed reaction-diffusion problems on Shishkin meshes"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  ldgs::SweepConfig cfg;
  double sigma = 0.0;
  std::string norm = "both";
  std::string solver = "auto";
  std::string format = "csv";
  std::string study = "solve";
  std::string out;
  std::string problem;

  app.add_option("--dim", cfg.dimension, "Spatial dimension")->check(CLI::IsMember({1, 2}));
  app.add_option("--problem", problem, "Problem key (default paper1d in 1D, manufactured2d in 2D)")->check(CLI::IsMember(ldgs::problem_keys()));
  app.add_option("--k", cfg.degrees, "Polynomial degrees")->delimiter(',');
  app.add_option("--n", cfg.cells, "Cell counts per axis, doubling")->delimiter(',');
  app.add_option("--eps", cfg.eps, "Perturbation parameters")->delimiter(',');
  auto* sigma_opt = app.add_option("--sigma", sigma, "Transition constant (default k+1)");
  app.add_option("--quad-order", cfg.quad_points, "Gauss points per direction for error integrals (0: 2(k+2))");
  app.add_option("--norm", norm, "Norms to report")->check(CLI::IsMember({"energy", "balanced", "both"}));
  app.add_option("--solver", solver, "Linear solver")->check(CLI::IsMember({"auto", "banded", "condensed"}));
  app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--study", study, "solve: discretization errors; projection: composite projection errors")
      ->check(CLI::IsMember({"solve", "projection"}));
  app.add_option("--workers", cfg.workers, "Concurrent sweep cells")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sigma_opt) cfg.sigma = sigma;
    cfg.norms = ldgs::parse_norm_selection(norm);
    cfg.solver.kind = ldgs::parse_solver_kind(solver);
    cfg.study = ldgs::parse_study(study);
    cfg.problem = !problem.empty() ? problem : (cfg.dimension == 1 ? "paper1d" : "manufactured2d");
    cfg.validate();

    const ldgs::ConvergenceTable table = cfg.study == ldgs::Study::projection ? ldgs::run_projection_study(cfg)
                                                                             : ldgs::run_sweep(cfg);
    const ldgs::OutputFormat fmt = ldgs::parse_output_format(format);
    if (out.empty()) {
      ldgs::emit_table(table, fmt, std::cout);
    } else {
      ldgs::write_table(table, fmt, out);
    }
    for (const auto& row : table.rows) {
      if (row.failed()) {
        std::cerr << "row k=" << row.k << " N=" << row.N << " eps=" << row.eps << " failed: " << row.failure << '\n';
      }
    }
    return table.any_failed() ? 2 : 0;
  } catch (const ldgs::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const ldgs::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 1;
  }
}
