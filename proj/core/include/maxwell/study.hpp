#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxwell/analysis.hpp"
#include "maxwell/assembly.hpp"
#include "maxwell/linsolve.hpp"

namespace maxwell {

/// One assemble-solve-measure cycle.
struct StudyRecord {
  int p = 1;
  int M = 1;
  double kappa = 1.0;
  double lambda = 1.0;
  std::int64_t dof = 0;
  double nlambda = 0.0;
  double h = 0.0;
  int assembly_degree = 0;
  int load_degree = 0;
  ErrorReport solution;
  ErrorReport interpolant;
  double stab_ratio = 0.0;
  double residual = 0.0;
  double assemble_s = 0.0;
  double solve_s = 0.0;
  bool flagged = false;
  std::string solver_message;  // set when the solver threw
};

/// Degrees of freedom per wavelength, 2 pi DOF^(1/3) / kappa.
double nlambda(std::int64_t dof, double kappa);

/// Residual gate: records above it are flagged and excluded from fits.
inline constexpr double kResidualGate = 1e-9;

/// Default guardrail on the global DOF count for a single run.
inline constexpr std::int64_t kDefaultMaxDofs = 300000;

enum class StudyKind { Pollution, Convergence, Single, Acceptance };

struct StudyConfig {
  StudyKind kind = StudyKind::Single;
  std::vector<int> orders{1};
  std::vector<double> kappas{5.0};
  double nlambda_target = 10.0;
  std::vector<int> subdivisions{2};
  double lambda = 1.0;
  SolverOptions solver;
  std::optional<int> quad_degree;  // overrides the load/error degree
  std::int64_t max_dofs = kDefaultMaxDofs;
  int threads = 0;
  std::uint64_t seed = 20240601;

  void validate() const;
};

/// Largest M whose order-p DOF count stays within max_dofs.
int max_subdivisions_for(int p, std::int64_t max_dofs);

/// Smallest M with nlambda(dof_count(M, p), kappa) >= target. Throws
/// std::out_of_range naming the cap when that M exceeds max_M.
int choose_M_for_target_nlambda(double kappa, int p, double target, int max_M);

struct SingleRunOutputs {
  std::string field_vtk;        // |E_h| per element, legacy VTK
  std::string matrix_market;    // assembled A
  std::vector<Complex>* solution = nullptr;
  AssembledSystem* system = nullptr;
};

StudyRecord run_single(int p, int M, double kappa, const StudyConfig& config,
                       const SingleRunOutputs& outputs = {});

std::vector<StudyRecord> run_pollution_study(const StudyConfig& config);
std::vector<StudyRecord> run_convergence_study(const StudyConfig& config);

/// CSV with shortest round-trip float formatting.
std::string csv_header();
std::string csv_row(const StudyRecord& r, bool with_timings = true);
void write_csv(std::ostream& os, std::span<const StudyRecord> records);

/// Parsed CSV columns (the fields present in the CSV only).
struct CsvRow {
  int p = 0;
  int M = 0;
  double kappa = 0.0;
  double lambda = 0.0;
  std::int64_t dof = 0;
  double nlambda = 0.0;
  double h = 0.0;
  double rel_energy_sol = 0.0;
  double rel_energy_interp = 0.0;
  double rel_l2_sol = 0.0;
  double rel_l2_interp = 0.0;
  double rel_curl_sol = 0.0;
  double rel_trace_sol = 0.0;
  double stab_ratio = 0.0;
  double residual = 0.0;
  double assemble_s = 0.0;
  double solve_s = 0.0;
  bool flagged = false;
};
std::vector<CsvRow> read_csv(std::istream& is);

/// Least-squares slope of log(err) against log(h).
double fit_rate(std::span<const double> h, std::span<const double> err);

struct Rates {
  double energy = 0.0;
  double l2 = 0.0;
};
/// Solution error rates over the unflagged records of one (p, kappa).
Rates fit_solution_rates(std::span<const StudyRecord> records);

/// gnuplot script reading the CSV; log-log axes.
void write_gnuplot_script(std::ostream& os, StudyKind kind, const std::string& csv_path);

}  // namespace maxwell
