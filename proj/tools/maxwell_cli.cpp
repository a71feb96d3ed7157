// Command-line front end: single solves, parameter studies, acceptance suite.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxwell/acceptance.hpp"
#include "maxwell/study.hpp"

namespace {

struct CommonOptions {
  double lambda = 1.0;
  std::string solver = "lu";
  double solver_tol = 1e-10;
  std::int64_t max_dofs = maxwell::kDefaultMaxDofs;
  int threads = 0;
  int quad_degree = -1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--lambda", o.lambda, "impedance constant")->check(CLI::PositiveNumber);
  cmd->add_option("--solver", o.solver, "linear solver")->check(CLI::IsMember({"lu", "gmres"}));
  cmd->add_option("--solver-tol", o.solver_tol, "GMRES relative residual target")->check(CLI::PositiveNumber);
  cmd->add_option("--max-dofs", o.max_dofs, "refuse runs with more DOFs than this");
  cmd->add_option("--threads", o.threads, "assembly threads (0: all cores)");
  cmd->add_option("--quad-degree", o.quad_degree, "load/error quadrature degree override")
      ->check(CLI::Range(0, maxwell::kMaxQuadratureDegree));
}

maxwell::StudyConfig make_config(const CommonOptions& o) {
  maxwell::StudyConfig c;
  c.lambda = o.lambda;
  c.solver.kind = maxwell::parse_solver_kind(o.solver);
  c.solver.tolerance = o.solver_tol;
  c.max_dofs = o.max_dofs;
  c.threads = o.threads;
  if (o.quad_degree >= 0) {
    c.quad_degree = o.quad_degree;
  }
  return c;
}

void print_record(const maxwell::StudyRecord& r) {
  std::cout << "p=" << r.p << " M=" << r.M << " kappa=" << r.kappa << " dof=" << r.dof
            << " N_lambda=" << r.nlambda << "\n"
            << "  rel. energy error  solution " << r.solution.rel.energy << "  interpolant "
            << r.interpolant.rel.energy << "\n"
            << "  rel. L2 error      solution " << r.solution.rel.l2 << "  interpolant "
            << r.interpolant.rel.l2 << "\n"
            << "  stability ratio " << r.stab_ratio << "  residual " << r.residual
            << "  assemble " << r.assemble_s << " s  solve " << r.solve_s << " s"
            << (r.flagged ? "  [flagged]" : "") << "\n";
  if (!r.solver_message.empty()) {
    std::cout << "  solver: " << r.solver_message << "\n";
  }
}

void write_outputs(const std::vector<maxwell::StudyRecord>& records, maxwell::StudyKind kind,
                   const std::string& csv, const std::string& plot) {
  if (!csv.empty()) {
    std::ofstream os(csv);
    if (!os) {
      throw std::runtime_error("cannot open " + csv);
    }
    maxwell::write_csv(os, records);
  } else {
    maxwell::write_csv(std::cout, records);
  }
  if (!plot.empty()) {
    std::ofstream os(plot);
    maxwell::write_gnuplot_script(os, kind, csv.empty() ? "study.csv" : csv);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-element solver for time-harmonic Maxwell equations with impedance boundary"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "assemble, solve and measure one configuration");
  CommonOptions solve_opts;
  int p = 1;
  int M = 2;
  double kappa = 5.0;
  std::string out_csv;
  std::string vtk;
  std::string matrix_market;
  solve_cmd->add_option("--p", p, "element order")->required()->check(CLI::Range(1, 3));
  solve_cmd->add_option("--M", M, "cube subdivisions per axis")->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--kappa", kappa, "wave number")->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", out_csv, "CSV file for the result row");
  solve_cmd->add_option("--vtk", vtk, "legacy VTK file with the discrete field");
  solve_cmd->add_option("--matrix-market", matrix_market, "write the system matrix");
  add_common(solve_cmd, solve_opts);

  // study
  auto* study_cmd = app.add_subcommand("study", "parameter studies");
  study_cmd->require_subcommand(1);

  auto* pollution_cmd = study_cmd->add_subcommand("pollution", "error against kappa at fixed N_lambda");
  CommonOptions pol_opts;
  std::vector<int> pol_orders{1, 2, 3};
  double target = 10.0;
  double kappa_min = 4.0;
  double kappa_max = 40.0;
  double kappa_step = 4.0;
  std::vector<double> pol_kappas;
  std::string pol_csv;
  std::string pol_plot;
  pollution_cmd->add_option("--p", pol_orders, "element orders")->delimiter(',')->check(CLI::Range(1, 3));
  pollution_cmd->add_option("--nlambda", target, "target DOFs per wavelength")->check(CLI::PositiveNumber);
  pollution_cmd->add_option("--kappa-min", kappa_min, "first wave number")->check(CLI::PositiveNumber);
  pollution_cmd->add_option("--kappa-max", kappa_max, "last wave number")->check(CLI::PositiveNumber);
  pollution_cmd->add_option("--kappa-step", kappa_step, "wave number increment")->check(CLI::PositiveNumber);
  pollution_cmd->add_option("--kappa", pol_kappas, "explicit wave numbers (overrides the range)")
      ->delimiter(',');
  pollution_cmd->add_option("--csv", pol_csv, "output CSV");
  pollution_cmd->add_option("--plot", pol_plot, "gnuplot script");
  add_common(pollution_cmd, pol_opts);

  auto* convergence_cmd = study_cmd->add_subcommand("convergence", "error against mesh size at fixed kappa");
  CommonOptions conv_opts;
  std::vector<int> conv_orders{1, 2, 3};
  std::vector<double> conv_kappas{5.0, 50.0};
  std::vector<int> conv_M{2, 3, 4, 6, 8};
  std::string conv_csv;
  std::string conv_plot;
  convergence_cmd->add_option("--p", conv_orders, "element orders")->delimiter(',')->check(CLI::Range(1, 3));
  convergence_cmd->add_option("--kappa", conv_kappas, "wave numbers")->delimiter(',');
  convergence_cmd->add_option("--M", conv_M, "cube subdivisions")->delimiter(',');
  convergence_cmd->add_option("--csv", conv_csv, "output CSV");
  convergence_cmd->add_option("--plot", conv_plot, "gnuplot script");
  add_common(convergence_cmd, conv_opts);

  // acceptance
  auto* acceptance_cmd = app.add_subcommand("acceptance", "run the acceptance suite");
  std::vector<int> criteria;
  maxwell::acceptance::Options acc;
  bool verbose = false;
  acceptance_cmd->add_option("--criterion", criteria, "criterion ids (default: all)")
      ->delimiter(',')->check(CLI::Range(1, 11));
  acceptance_cmd->add_option("--max-dofs", acc.max_dofs, "DOF cap per run");
  acceptance_cmd->add_option("--threads", acc.threads, "assembly threads (0: all cores)");
  acceptance_cmd->add_flag("-v,--verbose", verbose, "print per-run progress");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      auto config = make_config(solve_opts);
      config.kind = maxwell::StudyKind::Single;
      config.orders = {p};
      config.kappas = {kappa};
      config.subdivisions = {M};
      config.validate();
      maxwell::SingleRunOutputs outputs;
      outputs.field_vtk = vtk;
      outputs.matrix_market = matrix_market;
      const auto record = maxwell::run_single(p, M, kappa, config, outputs);
      print_record(record);
      if (!out_csv.empty()) {
        std::ofstream os(out_csv);
        const std::vector<maxwell::StudyRecord> rows{record};
        maxwell::write_csv(os, rows);
      }
      return record.flagged ? 2 : 0;
    }
    if (*pollution_cmd) {
      auto config = make_config(pol_opts);
      config.kind = maxwell::StudyKind::Pollution;
      config.orders = pol_orders;
      config.nlambda_target = target;
      if (pol_kappas.empty()) {
        if (kappa_max < kappa_min) {
          throw std::invalid_argument("--kappa-max is below --kappa-min");
        }
        for (int i = 0;; ++i) {
          const double k = kappa_min + i * kappa_step;
          if (k > kappa_max * (1.0 + 1e-12)) {
            break;
          }
          pol_kappas.push_back(k);
        }
      }
      config.kappas = pol_kappas;
      const auto records = maxwell::run_pollution_study(config);
      write_outputs(records, config.kind, pol_csv, pol_plot);
      return 0;
    }
    if (*convergence_cmd) {
      auto config = make_config(conv_opts);
      config.kind = maxwell::StudyKind::Convergence;
      config.orders = conv_orders;
      config.kappas = conv_kappas;
      config.subdivisions = conv_M;
      const auto records = maxwell::run_convergence_study(config);
      write_outputs(records, config.kind, conv_csv, conv_plot);
      return 0;
    }
    if (*acceptance_cmd) {
      if (verbose) {
        acc.log = &std::cerr;
      }
      if (criteria.empty()) {
        for (const auto& c : maxwell::acceptance::criteria()) {
          criteria.push_back(c.id);
        }
      }
      int failures = 0;
      for (const int id : criteria) {
        const auto result = maxwell::acceptance::run_criterion(id, acc);
        std::cout << maxwell::acceptance::format_result(result) << std::endl;
        failures += result.passed ? 0 : 1;
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
