#include "maxwell/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "maxwell/analysis.hpp"
#include "maxwell/assembly.hpp"
#include "maxwell/fe_basis.hpp"
#include "maxwell/linsolve.hpp"
#include "maxwell/manufactured.hpp"
#include "maxwell/mesh.hpp"
#include "maxwell/study.hpp"

namespace maxwell::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v, int digits = 3) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

void log_line(const Options& opt, const std::string& line) {
  if (opt.log != nullptr) {
    *opt.log << "  " << line << '\n' << std::flush;
  }
}

AssemblyOptions assembly_options(const FeSpace& space, double kappa, int threads) {
  AssemblyOptions o;
  o.quadrature = QuadraturePolicy::standard(space.order(), kappa, space.mesh().h());
  o.threads = threads;
  return o;
}

std::vector<Complex> random_coefficients(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<Complex> u(n);
  for (auto& v : u) {
    v = {d(rng), d(rng)};
  }
  return u;
}

Complex hermitian_form(const RealSparseMatrix& m, std::span<const Complex> u) {
  const auto mu = multiply(m, u);
  Complex s(0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += std::conj(u[i]) * mu[i];
  }
  return s;
}

// 1. Closed-form DOF count against the assembled numbering.
CriterionResult dof_formula(const Options&) {
  CriterionResult r;
  r.passed = true;
  int checked = 0;
  for (int M = 1; M <= 4; ++M) {
    const auto mesh = Mesh::build_cube(M);
    for (int p = 1; p <= 3; ++p) {
      const std::int64_t m = M;
      const std::int64_t expected =
          m * (p + 1) * (3 * m * m * p * p + 3 * m * m * p + m * m + 6 * m * p + 3 * m + 3);
      const int numbered = DofMap(mesh, p).total_dofs();
      if (numbered != expected || dof_count(M, p) != expected) {
        r.passed = false;
        r.detail += "M=" + std::to_string(M) + " p=" + std::to_string(p) + " got " +
                    std::to_string(numbered) + " want " + std::to_string(expected) + "; ";
      }
      ++checked;
    }
  }
  if (r.passed) {
    r.detail = std::to_string(checked) + " (M, p) pairs match";
  }
  return r;
}

// 2. Mesh entity counts.
CriterionResult entity_counts(const Options&) {
  CriterionResult r;
  const auto one = Mesh::build_cube(1);
  const auto two = Mesh::build_cube(2);
  const std::array<std::size_t, 5> got1{one.num_vertices(), one.num_tets(), one.num_edges(),
                                        one.num_faces(), one.boundary_faces().size()};
  const std::array<std::size_t, 4> got2{two.num_vertices(), two.num_tets(), two.num_edges(),
                                        two.boundary_faces().size()};
  r.passed = got1 == std::array<std::size_t, 5>{8, 6, 19, 18, 12} &&
             got2 == std::array<std::size_t, 4>{27, 48, 98, 48};
  r.detail = "M=1: " + std::to_string(got1[0]) + "/" + std::to_string(got1[1]) + "/" +
             std::to_string(got1[2]) + "/" + std::to_string(got1[3]) + "/" + std::to_string(got1[4]) +
             ", M=2: " + std::to_string(got2[0]) + "/" + std::to_string(got2[1]) + "/" +
             std::to_string(got2[2]) + "/" + std::to_string(two.num_faces()) + "/" +
             std::to_string(got2[3]);
  return r;
}

// 3. Duality of every orientation variant and reproduction of (P_p)^3.
CriterionResult duality_and_reproduction(const Options& opt) {
  constexpr double kDualityTol = 1e-12;
  constexpr double kReproductionTol = 1e-10;
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  double worst_duality = 0.0;
  double worst_reproduction = 0.0;
  const auto mesh = Mesh::build_cube(2);
  for (int p = 1; p <= 3; ++p) {
    VertexRanks ranks{0, 1, 2, 3};
    do {
      const auto d = ReferenceBasis(p, ranks).duality_matrix();
      worst_duality = std::max(
          worst_duality, (d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff());
    } while (std::next_permutation(ranks.begin(), ranks.end()));

    const FeSpace space(mesh, p);
    for (int trial = 0; trial < 5; ++trial) {
      const auto exact = polynomial_solution({1.0, 1.0}, PolynomialField::random(p, rng));
      const auto u = interpolate(exact, space, 2 * p + 2);
      const auto err = error_norms(space, u.values, exact, 2 * p + 2);
      worst_reproduction = std::max({worst_reproduction, err.rel.l2, err.rel.curl, err.rel.trace});
    }
  }
  r.passed = worst_duality <= kDualityTol && worst_reproduction <= kReproductionTol;
  r.detail = "max |G - I| = " + num(worst_duality) + ", max rel. interpolation error " +
             num(worst_reproduction);
  return r;
}

// 4. Two-sided tangential traces on interior faces.
CriterionResult tangential_continuity(const Options& opt) {
  constexpr double kTol = 1e-10;
  CriterionResult r;
  std::mt19937_64 rng(opt.seed + 4);
  const auto mesh = Mesh::build_cube(2);
  const auto rule = tri_rule(6);
  double worst = 0.0;
  std::size_t samples = 0;
  for (int p = 1; p <= 3; ++p) {
    const FeSpace space(mesh, p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_coefficients(space.total_dofs(), rng);
      auto local = [&](int t) {
        std::vector<Complex> out;
        for (const int d : space.dofs().element_dofs(t)) {
          out.push_back(u[d]);
        }
        return out;
      };
      for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto& ft = mesh.face_tets(static_cast<int>(f));
        if (ft[1] < 0) {
          continue;
        }
        const auto& fv = mesh.faces()[f];
        const Vec3 a = mesh.vertices()[fv[0]];
        const Vec3 t1 = mesh.vertices()[fv[1]] - a;
        const Vec3 t2 = mesh.vertices()[fv[2]] - a;
        const CVec3 n = t1.cross(t2).normalized().cast<Complex>();
        const auto l0 = local(ft[0]);
        const auto l1 = local(ft[1]);
        for (const auto& q : rule.points) {
          const Vec3 x = a + q[0] * t1 + q[1] * t2;
          const auto s0 = push_forward(space.basis(ft[0]), l0, mesh.element_maps()[ft[0]], x);
          const auto s1 = push_forward(space.basis(ft[1]), l1, mesh.element_maps()[ft[1]], x);
          const double scale = std::max({1.0, s0.value.norm(), s1.value.norm()});
          worst = std::max(worst, cross(n, s0.value - s1.value).norm() / scale);
          ++samples;
        }
      }
    }
  }
  r.passed = worst <= kTol;
  r.detail = "max tangential jump " + num(worst) + " over " + std::to_string(samples) + " samples";
  return r;
}

// 5. A = S - k^2 Mv - i k lambda B, symmetry, and the Garding identity.
CriterionResult matrix_identities(const Options& opt) {
  constexpr double kMatrixTol = 1e-12;
  constexpr double kGardingTol = 1e-10;
  constexpr double kappa = 7.0;
  constexpr double lambda = 1.0;
  CriterionResult r;
  std::mt19937_64 rng(opt.seed + 5);
  const auto mesh = Mesh::build_cube(2);
  double worst_split = 0.0;
  double worst_sym = 0.0;
  double worst_garding = 0.0;
  for (int p = 1; p <= 3; ++p) {
    const FeSpace space(mesh, p);
    const ProblemParams params{kappa, lambda};
    const auto sys = assemble(space, bessel_solution(params), assembly_options(space, kappa, opt.threads));
    double scale = 0.0;
    for (const auto& v : sys.A.values) {
      scale = std::max(scale, std::abs(v));
    }
    for (int row = 0; row < sys.A.rows; ++row) {
      for (int k = sys.A.row_ptr[row]; k < sys.A.row_ptr[row + 1]; ++k) {
        const Complex split = sys.S.values[k] - kappa * kappa * sys.Mv.values[k] -
                              kI * kappa * lambda * sys.B.values[k];
        worst_split = std::max(worst_split, std::abs(sys.A.values[k] - split) / scale);
        worst_sym = std::max(worst_sym, std::abs(sys.A.values[k] - sys.A.at(sys.A.col_idx[k], row)) / scale);
      }
    }
    for (int trial = 0; trial < 50; ++trial) {
      const auto u = random_coefficients(space.total_dofs(), rng);
      const auto au = multiply(sys.A, std::span<const Complex>(u));
      Complex a(0.0);
      for (std::size_t i = 0; i < u.size(); ++i) {
        a += std::conj(u[i]) * au[i];
      }
      const double s = hermitian_form(sys.S, u).real();
      const double m = hermitian_form(sys.Mv, u).real();
      const double b = hermitian_form(sys.B, u).real();
      const double lhs = a.real() - a.imag();
      const double rhs = s - kappa * kappa * m + kappa * lambda * b;
      worst_garding = std::max(worst_garding, std::abs(lhs - rhs) / (s + kappa * kappa * m + kappa * lambda * b));
    }
  }
  r.passed = worst_split <= kMatrixTol && worst_sym <= kMatrixTol && worst_garding <= kGardingTol;
  r.detail = "split " + num(worst_split) + ", symmetry " + num(worst_sym) + ", Garding " +
             num(worst_garding);
  return r;
}

// 6. Polynomial exact solutions are recovered by the discrete solve.
CriterionResult patch_test(const Options& opt) {
  constexpr double kTol = 1e-8;
  CriterionResult r;
  std::mt19937_64 rng(opt.seed + 6);
  const auto mesh = Mesh::build_cube(2);
  const ProblemParams params{3.0, 1.0};
  double worst = 0.0;
  for (int p = 1; p <= 3; ++p) {
    const FeSpace space(mesh, p);
    for (int degree = 0; degree <= p; ++degree) {
      const auto exact = polynomial_solution(params, PolynomialField::random(degree, rng));
      const auto sys = assemble(space, exact, assembly_options(space, params.kappa, opt.threads));
      const auto report = solve(sys.A, sys.b);
      const auto err = error_norms(space, report.x, exact, 2 * p + 2);
      worst = std::max(worst, err.rel.l2);
    }
  }
  r.passed = worst <= kTol;
  r.detail = "max rel. L2 error " + num(worst);
  return r;
}

// 7. Closed-form curl E and f against central differences of E.
CriterionResult manufactured_oracle(const Options& opt) {
  constexpr double kCurlTol = 1e-5;
  constexpr double kSourceTol = 1e-3;
  CriterionResult r;
  std::mt19937_64 rng(opt.seed + 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_curl = 0.0;
  double worst_source = 0.0;
  for (const double kappa : {5.0, 50.0}) {
    const auto exact = bessel_solution({kappa, 1.0});
    const double h = 1e-4 / kappa;
    using Field = std::function<CVec3(const Vec3&)>;
    auto fd_curl = [h](const Field& field, const Vec3& x) {
      Eigen::Matrix<Complex, 3, 3> J;
      for (int k = 0; k < 3; ++k) {
        Vec3 e = Vec3::Zero();
        e[k] = h;
        J.col(k) = (field(x + e) - field(x - e)) / (2.0 * h);
      }
      return CVec3(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
    };
    const Field E = [&](const Vec3& x) { return exact.eval_E(x); };
    const Field curl_fd = [&](const Vec3& x) { return fd_curl(E, x); };
    for (int i = 0; i < 200; ++i) {
      const Vec3 x(unit(rng), unit(rng), unit(rng));
      const CVec3 c = exact.eval_curlE(x);
      worst_curl = std::max(worst_curl, (curl_fd(x) - c).norm() / c.norm());
      const CVec3 f = exact.eval_f(x);
      const CVec3 f_fd = fd_curl(curl_fd, x) - kappa * kappa * exact.eval_E(x);
      worst_source = std::max(worst_source, (f_fd - f).norm() / f.norm());
    }
  }
  r.passed = worst_curl <= kCurlTol && worst_source <= kSourceTol;
  r.detail = "max rel. curl deviation " + num(worst_curl) + ", source " + num(worst_source);
  return r;
}

// 8. Fixed-kappa convergence rates.
CriterionResult convergence_rates(const Options& opt) {
  constexpr double kappa = 5.0;
  constexpr double kRateTol = 0.3;
  constexpr double kQuasiOptimality = 1.5;
  CriterionResult r;
  r.passed = true;
  for (int p = 1; p <= 3; ++p) {
    StudyConfig config;
    config.kind = StudyKind::Convergence;
    config.orders = {p};
    config.kappas = {kappa};
    config.subdivisions = p < 3 ? std::vector<int>{2, 3, 4, 6, 8} : std::vector<int>{2, 3, 4};
    config.max_dofs = opt.max_dofs;
    config.threads = opt.threads;
    const auto records = run_convergence_study(config);
    for (const auto& rec : records) {
      log_line(opt, "p=" + std::to_string(p) + " M=" + std::to_string(rec.M) + " energy " +
                        num(rec.solution.rel.energy) + " L2 " + num(rec.solution.rel.l2) +
                        " interp " + num(rec.interpolant.rel.energy));
    }
    const auto rates = fit_solution_rates(records);
    const auto& finest = records.back();
    const double ratio = finest.solution.rel.energy / finest.interpolant.rel.energy;
    const bool ok = !finest.flagged && std::abs(rates.energy - p) <= kRateTol &&
                    std::abs(rates.l2 - (p + 1)) <= kRateTol && ratio <= kQuasiOptimality;
    r.passed = r.passed && ok;
    r.detail += "p=" + std::to_string(p) + ": energy " + num(rates.energy) + ", L2 " +
                num(rates.l2) + ", sol/interp " + num(ratio) + (ok ? "; " : " (out of range); ");
  }
  return r;
}

// 9. Pollution at fixed N_lambda = 10 between kappa = 10 and 20.
CriterionResult pollution_growth(const Options& opt) {
  constexpr double kTarget = 10.0;
  CriterionResult r;
  std::map<std::pair<int, double>, StudyRecord> runs;
  for (int p = 1; p <= 2; ++p) {
    for (const double kappa : {10.0, 20.0}) {
      StudyConfig config;
      config.max_dofs = opt.max_dofs;
      config.threads = opt.threads;
      const int M = choose_M_for_target_nlambda(kappa, p, kTarget, max_subdivisions_for(p, opt.max_dofs));
      auto rec = run_single(p, M, kappa, config);
      log_line(opt, "p=" + std::to_string(p) + " kappa=" + num(kappa) + " M=" + std::to_string(M) +
                        " N_lambda " + num(rec.nlambda) + " energy " + num(rec.solution.rel.energy) +
                        " interp " + num(rec.interpolant.rel.energy));
      if (rec.flagged) {
        r.detail += "flagged run p=" + std::to_string(p) + " kappa=" + num(kappa) + "; ";
      }
      runs.emplace(std::pair{p, kappa}, std::move(rec));
    }
  }
  auto growth = [&](int p, bool solution) {
    const auto& lo = runs.at({p, 10.0});
    const auto& hi = runs.at({p, 20.0});
    return solution ? hi.solution.rel.energy / lo.solution.rel.energy
                    : hi.interpolant.rel.energy / lo.interpolant.rel.energy;
  };
  const double sol1 = growth(1, true);
  const double int1 = growth(1, false);
  const double sol2 = growth(2, true);
  bool any_flagged = false;
  for (const auto& [key, rec] : runs) {
    any_flagged = any_flagged || rec.flagged;
  }
  r.passed = !any_flagged && sol1 >= 1.3 && sol1 <= 3.0 && int1 >= 0.7 && int1 <= 1.4 && sol2 < sol1;
  r.detail += "p=1 solution growth " + num(sol1) + " (want [1.3, 3]), interpolant growth " +
              num(int1) + " (want [0.7, 1.4]); p=2 solution growth " + num(sol2);
  return r;
}

// 10. Stability ratio under kappa^3 h^2 <= 1.
CriterionResult stability_bound(const Options& opt) {
  constexpr int p = 1;
  constexpr double kSpread = 3.0;
  CriterionResult r;
  struct Case {
    double kappa;
    int M;
    std::int64_t dofs;
  };
  std::vector<Case> cases;
  bool feasible = true;
  for (const double kappa : {5.0, 10.0, 20.0}) {
    // h = sqrt(3) / M, so kappa^3 h^2 <= 1 iff M >= sqrt(3 kappa^3).
    int M = static_cast<int>(std::ceil(std::sqrt(3.0 * kappa * kappa * kappa)));
    while (kappa * kappa * kappa * 3.0 / (static_cast<double>(M) * M) > 1.0) {
      ++M;
    }
    const std::int64_t dofs = dof_count(M, p);
    cases.push_back({kappa, M, dofs});
    feasible = feasible && dofs <= opt.max_dofs;
  }
  if (!feasible) {
    r.passed = false;
    r.detail = "mesh condition needs";
    for (const auto& c : cases) {
      r.detail += " kappa=" + num(c.kappa) + ": M=" + std::to_string(c.M) + " (" +
                  std::to_string(c.dofs) + " DOFs)";
    }
    r.detail += "; DOF cap " + std::to_string(opt.max_dofs);
    return r;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool flagged = false;
  for (const auto& c : cases) {
    StudyConfig config;
    config.max_dofs = opt.max_dofs;
    config.threads = opt.threads;
    const auto rec = run_single(p, c.M, c.kappa, config);
    flagged = flagged || rec.flagged;
    lo = std::min(lo, rec.stab_ratio);
    hi = std::max(hi, rec.stab_ratio);
    r.detail += "kappa=" + num(c.kappa) + " ratio " + num(rec.stab_ratio) + "; ";
  }
  r.passed = !flagged && hi <= kSpread * lo;
  r.detail += "spread " + num(hi / lo);
  return r;
}

// 11. Bitwise reproducibility of the smallest convergence run.
CriterionResult determinism(const Options& opt) {
  CriterionResult r;
  StudyConfig config;
  config.max_dofs = opt.max_dofs;
  config.threads = opt.threads;
  AssembledSystem first_sys;
  AssembledSystem second_sys;
  const auto first = run_single(1, 2, 5.0, config, {.field_vtk = {}, .matrix_market = {}, .solution = nullptr, .system = &first_sys});
  config.threads = 1;
  const auto second = run_single(1, 2, 5.0, config, {.field_vtk = {}, .matrix_market = {}, .solution = nullptr, .system = &second_sys});
  const bool same_matrix = first_sys.A.values == second_sys.A.values &&
                           first_sys.A.col_idx == second_sys.A.col_idx && first_sys.b == second_sys.b;
  const bool same_row = csv_row(first, false) == csv_row(second, false);
  r.passed = same_matrix && same_row;
  r.detail = std::string("matrix ") + (same_matrix ? "identical" : "differs") + ", CSV row " +
             (same_row ? "identical" : "differs");
  return r;
}

using Runner = CriterionResult (*)(const Options&);

struct Entry {
  CriterionInfo info;
  Runner run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{1, "DOF formula"}, dof_formula},
      {{2, "mesh entity counts"}, entity_counts},
      {{3, "basis duality and polynomial reproduction"}, duality_and_reproduction},
      {{4, "tangential continuity"}, tangential_continuity},
      {{5, "matrix identities"}, matrix_identities},
      {{6, "polynomial patch test"}, patch_test},
      {{7, "manufactured data oracle"}, manufactured_oracle},
      {{8, "convergence rates at kappa = 5"}, convergence_rates},
      {{9, "pollution growth at N_lambda = 10"}, pollution_growth},
      {{10, "stability ratio under kappa^3 h^2 <= 1"}, stability_bound},
      {{11, "determinism"}, determinism},
  };
  return entries;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> infos = [] {
    std::vector<CriterionInfo> out;
    for (const auto& e : registry()) {
      out.push_back(e.info);
    }
    return out;
  }();
  return infos;
}

CriterionResult run_criterion(int id, const Options& options) {
  for (const auto& e : registry()) {
    if (e.info.id != id) {
      continue;
    }
    const auto start = Clock::now();
    CriterionResult r;
    try {
      r = e.run(options);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("error: ") + ex.what();
    }
    r.id = id;
    r.title = e.info.title;
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
  }
  throw std::out_of_range("no acceptance criterion " + std::to_string(id));
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream os;
  os << (result.passed ? "[PASS] " : "[FAIL] ") << result.id << ' ' << result.title << ": "
     << result.detail << " (" << num(result.seconds, 3) << " s)";
  return os.str();
}

}  // namespace maxwell::acceptance
