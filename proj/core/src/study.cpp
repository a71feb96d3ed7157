#include "maxwell/study.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "maxwell/export.hpp"

namespace maxwell {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed CSV number '" + s + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed CSV integer '" + s + "'");
  }
  return v;
}

ErrorReport nan_report() {
  ErrorReport r;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto* set : {&r.abs, &r.rel, &r.exact}) {
    *set = NormSet{nan, nan, nan, nan, nan};
  }
  return r;
}

}  // namespace

double nlambda(std::int64_t dof, double kappa) {
  return 2.0 * std::numbers::pi * std::cbrt(static_cast<double>(dof)) / kappa;
}

void StudyConfig::validate() const {
  if (orders.empty()) {
    throw std::invalid_argument("study needs at least one element order");
  }
  for (const int p : orders) {
    EntityLayout::for_order(p);
  }
  if (kappas.empty()) {
    throw std::invalid_argument("study needs at least one wave number");
  }
  for (const double k : kappas) {
    ProblemParams{k, lambda}.validate();
  }
  if (kind == StudyKind::Convergence || kind == StudyKind::Single) {
    if (subdivisions.empty()) {
      throw std::invalid_argument("study needs at least one subdivision count M");
    }
    for (const int M : subdivisions) {
      if (M < 1) {
        throw std::invalid_argument("subdivision count M must be >= 1");
      }
    }
  }
  if (kind == StudyKind::Pollution && !(nlambda_target > 0.0)) {
    throw std::invalid_argument("target N_lambda must be positive");
  }
  if (max_dofs < 1) {
    throw std::invalid_argument("DOF cap must be positive");
  }
}

int max_subdivisions_for(int p, std::int64_t max_dofs) {
  int M = 0;
  while (M < max_supported_subdivisions() && dof_count(M + 1, p) <= max_dofs) {
    ++M;
  }
  return M;
}

int choose_M_for_target_nlambda(double kappa, int p, double target, int max_M) {
  if (!(target > 0.0)) {
    throw std::invalid_argument("target N_lambda must be positive");
  }
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("wave number must be positive");
  }
  for (int M = 1; M <= max_M; ++M) {
    if (nlambda(dof_count(M, p), kappa) >= target) {
      return M;
    }
  }
  throw std::out_of_range("N_lambda >= " + fmt(target) + " at kappa = " + fmt(kappa) +
                          ", p = " + std::to_string(p) + " needs M above the cap " +
                          std::to_string(max_M));
}

StudyRecord run_single(int p, int M, double kappa, const StudyConfig& config,
                       const SingleRunOutputs& outputs) {
  const std::int64_t dof = dof_count(M, p);
  if (dof > config.max_dofs) {
    throw std::out_of_range("run (p = " + std::to_string(p) + ", M = " + std::to_string(M) +
                            ") has " + std::to_string(dof) + " DOFs, above the cap " +
                            std::to_string(config.max_dofs));
  }
  const ProblemParams params{kappa, config.lambda};
  params.validate();

  const Mesh mesh = Mesh::build_cube(M);
  const FeSpace space(mesh, p);
  const ExactSolution exact = bessel_solution(params);

  AssemblyOptions opts;
  opts.quadrature = QuadraturePolicy::standard(p, kappa, mesh.h());
  if (config.quad_degree) {
    opts.quadrature.load_degree = *config.quad_degree;
  }
  opts.threads = config.threads;

  StudyRecord rec;
  rec.p = p;
  rec.M = M;
  rec.kappa = kappa;
  rec.lambda = config.lambda;
  rec.dof = space.total_dofs();
  rec.nlambda = nlambda(rec.dof, kappa);
  rec.h = mesh.h();
  rec.assembly_degree = opts.quadrature.assembly_degree;
  rec.load_degree = opts.quadrature.load_degree;

  auto start = Clock::now();
  AssembledSystem sys = assemble(space, exact, opts);
  rec.assemble_s = seconds_since(start);
  if (!outputs.matrix_market.empty()) {
    std::ofstream os(outputs.matrix_market);
    write_matrix_market(os, sys.A);
  }

  std::vector<Complex> x;
  start = Clock::now();
  try {
    auto report = solve(sys.A, sys.b, config.solver);
    x = std::move(report.x);
    rec.residual = report.relative_residual;
  } catch (const SolverError& e) {
    rec.residual = std::numeric_limits<double>::infinity();
    rec.solver_message = e.what();
  }
  rec.solve_s = seconds_since(start);
  rec.flagged = !(rec.residual <= kResidualGate);

  const int qd = opts.quadrature.load_degree;
  const auto interp = interpolate(exact, space, qd);
  rec.interpolant = error_norms(space, interp.values, exact, qd);
  if (!x.empty()) {
    rec.solution = error_norms(space, x, exact, qd);
    rec.stab_ratio = stability_ratio(field_norms(space, x, params, qd),
                                     data_norms(mesh, exact, qd), params);
    if (!outputs.field_vtk.empty()) {
      std::ofstream os(outputs.field_vtk);
      write_field_vtk(os, space, x);
    }
  } else {
    rec.solution = nan_report();
    rec.stab_ratio = std::numeric_limits<double>::quiet_NaN();
  }
  if (outputs.solution != nullptr) {
    *outputs.solution = std::move(x);
  }
  if (outputs.system != nullptr) {
    *outputs.system = std::move(sys);
  }
  return rec;
}

std::vector<StudyRecord> run_pollution_study(const StudyConfig& config) {
  config.validate();
  // Resolve every mesh first so that a cap violation fails before any work.
  std::vector<std::array<double, 3>> plan;
  for (const int p : config.orders) {
    const int cap = max_subdivisions_for(p, config.max_dofs);
    for (const double k : config.kappas) {
      plan.push_back({static_cast<double>(p), k,
                      static_cast<double>(choose_M_for_target_nlambda(k, p, config.nlambda_target, cap))});
    }
  }
  std::vector<StudyRecord> out;
  for (const auto& [p, k, M] : plan) {
    out.push_back(run_single(static_cast<int>(p), static_cast<int>(M), k, config));
  }
  return out;
}

std::vector<StudyRecord> run_convergence_study(const StudyConfig& config) {
  config.validate();
  for (const int p : config.orders) {
    for (const int M : config.subdivisions) {
      if (dof_count(M, p) > config.max_dofs) {
        throw std::out_of_range("convergence run (p = " + std::to_string(p) + ", M = " +
                                std::to_string(M) + ") exceeds the DOF cap " +
                                std::to_string(config.max_dofs));
      }
    }
  }
  std::vector<StudyRecord> out;
  for (const int p : config.orders) {
    for (const double k : config.kappas) {
      for (const int M : config.subdivisions) {
        out.push_back(run_single(p, M, k, config));
      }
    }
  }
  return out;
}

std::string csv_header() {
  return "p,M,kappa,lambda,dof,nlambda,h,rel_energy_sol,rel_energy_interp,rel_l2_sol,"
         "rel_l2_interp,rel_curl_sol,rel_trace_sol,stab_ratio,residual,assemble_s,solve_s,flagged";
}

std::string csv_row(const StudyRecord& r, bool with_timings) {
  std::ostringstream os;
  os << r.p << ',' << r.M << ',' << fmt(r.kappa) << ',' << fmt(r.lambda) << ',' << r.dof << ','
     << fmt(r.nlambda) << ',' << fmt(r.h) << ',' << fmt(r.solution.rel.energy) << ','
     << fmt(r.interpolant.rel.energy) << ',' << fmt(r.solution.rel.l2) << ','
     << fmt(r.interpolant.rel.l2) << ',' << fmt(r.solution.rel.curl) << ','
     << fmt(r.solution.rel.trace) << ',' << fmt(r.stab_ratio) << ',' << fmt(r.residual) << ',';
  if (with_timings) {
    os << fmt(r.assemble_s) << ',' << fmt(r.solve_s);
  } else {
    os << ',';
  }
  os << ',' << (r.flagged ? "true" : "false");
  return os.str();
}

void write_csv(std::ostream& os, std::span<const StudyRecord> records) {
  os << csv_header() << '\n';
  for (const auto& r : records) {
    os << csv_row(r) << '\n';
  }
}

std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header()) {
    throw std::invalid_argument("CSV header mismatch");
  }
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      f.push_back(cell);
    }
    if (f.size() != 18) {
      throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected 18");
    }
    CsvRow r;
    r.p = static_cast<int>(parse_int(f[0]));
    r.M = static_cast<int>(parse_int(f[1]));
    r.kappa = parse_double(f[2]);
    r.lambda = parse_double(f[3]);
    r.dof = parse_int(f[4]);
    r.nlambda = parse_double(f[5]);
    r.h = parse_double(f[6]);
    r.rel_energy_sol = parse_double(f[7]);
    r.rel_energy_interp = parse_double(f[8]);
    r.rel_l2_sol = parse_double(f[9]);
    r.rel_l2_interp = parse_double(f[10]);
    r.rel_curl_sol = parse_double(f[11]);
    r.rel_trace_sol = parse_double(f[12]);
    r.stab_ratio = parse_double(f[13]);
    r.residual = parse_double(f[14]);
    r.assemble_s = f[15].empty() ? 0.0 : parse_double(f[15]);
    r.solve_s = f[16].empty() ? 0.0 : parse_double(f[16]);
    r.flagged = f[17] == "true";
    rows.push_back(r);
  }
  return rows;
}

double fit_rate(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) {
    throw std::invalid_argument("rate fit needs at least two (h, error) pairs");
  }
  const auto n = static_cast<double>(h.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) {
    throw std::invalid_argument("rate fit needs distinct mesh sizes");
  }
  return (n * sxy - sx * sy) / den;
}

Rates fit_solution_rates(std::span<const StudyRecord> records) {
  std::vector<double> h, energy, l2;
  for (const auto& r : records) {
    if (r.flagged) {
      continue;
    }
    h.push_back(r.h);
    energy.push_back(r.solution.rel.energy);
    l2.push_back(r.solution.rel.l2);
  }
  return {fit_rate(h, energy), fit_rate(h, l2)};
}

void write_gnuplot_script(std::ostream& os, StudyKind kind, const std::string& csv_path) {
  // Columns: 1 p, 3 kappa, 6 nlambda, 8/9 energy sol/interp, 10/11 L2 sol/interp.
  os << "set datafile separator ','\n"
     << "set terminal pngcairo size 1200,500\n"
     << "set logscale y\n"
     << "set grid\n"
     << "set key outside right\n";
  const std::string data = "'" + csv_path + "'";
  if (kind == StudyKind::Pollution) {
    os << "set output 'pollution.png'\n"
       << "set xlabel 'kappa'\n"
       << "set ylabel 'relative error (energy)'\n"
       << "plot for [q=1:3] " << data
       << " every ::1 using ($1==q ? $3 : NaN):8 with linespoints title sprintf('p=%d solution', q), \\\n"
       << "     for [q=1:3] " << data
       << " every ::1 using ($1==q ? $3 : NaN):9 with linespoints dt 2 title sprintf('p=%d interpolant', q)\n";
    return;
  }
  os << "set logscale x\n"
     << "set xlabel 'N_lambda'\n";
  for (const auto& [col_sol, col_int, name] :
       {std::tuple{8, 9, std::string("energy")}, std::tuple{10, 11, std::string("l2")}}) {
    os << "set output 'convergence_" << name << ".png'\n"
       << "set ylabel 'relative error (" << name << ")'\n"
       << "plot for [q=1:3] " << data << " every ::1 using ($1==q ? $6 : NaN):" << col_sol
       << " with linespoints title sprintf('p=%d solution', q), \\\n"
       << "     for [q=1:3] " << data << " every ::1 using ($1==q ? $6 : NaN):" << col_int
       << " with linespoints dt 2 title sprintf('p=%d interpolant', q)\n";
  }
}

}  // namespace maxwell
