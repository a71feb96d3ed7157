#include <gtest/gtest.h>

#include <random>

#include "maxwell/linsolve.hpp"

namespace maxwell {
namespace {

ComplexSparseMatrix dense_to_csr(const std::vector<std::vector<Complex>>& a) {
  std::vector<std::tuple<int, int, Complex>> t;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[r].size(); ++c) {
      if (a[r][c] != Complex(0.0)) {
        t.emplace_back(static_cast<int>(r), static_cast<int>(c), a[r][c]);
      }
    }
  }
  return from_triplets(static_cast<int>(a.size()), static_cast<int>(a.size()), std::move(t));
}

ComplexSparseMatrix random_sparse(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::uniform_int_distribution<int> col(0, n - 1);
  std::vector<std::tuple<int, int, Complex>> t;
  for (int r = 0; r < n; ++r) {
    t.emplace_back(r, r, Complex(8.0 + d(rng), d(rng)));
    for (int k = 0; k < 5; ++k) {
      t.emplace_back(r, col(rng), Complex(d(rng), d(rng)));
    }
  }
  return from_triplets(n, n, std::move(t));
}

TEST(Linsolve, Identity) {
  const auto a = dense_to_csr({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  const std::vector<Complex> b{{1.0, 2.0}, {3.0, -1.0}, {0.0, 0.5}};
  for (const auto kind : {SolverKind::Lu, SolverKind::Gmres}) {
    SolverOptions opts;
    opts.kind = kind;
    const auto r = solve(a, b, opts);
    for (int i = 0; i < 3; ++i) {
      EXPECT_LE(std::abs(r.x[i] - b[i]), 1e-14);
    }
  }
}

TEST(Linsolve, ComplexTwoByTwo) {
  const Complex i(0.0, 1.0);
  const auto a = dense_to_csr({{2.0, i}, {i, 2.0}});
  const std::vector<Complex> b{1.0, 0.0};
  const auto r = solve(a, b);
  EXPECT_LE(std::abs(r.x[0] - Complex(0.4, 0.0)), 1e-15);
  EXPECT_LE(std::abs(r.x[1] - Complex(0.0, -0.2)), 1e-15);
  EXPECT_LE(r.relative_residual, 1e-15);
}

TEST(Linsolve, RandomSystemLuAndGmresAgree) {
  const auto a = random_sparse(100, 42);
  std::mt19937_64 rng(43);
  std::normal_distribution<double> d;
  std::vector<Complex> x_true(100);
  for (auto& v : x_true) {
    v = {d(rng), d(rng)};
  }
  const auto b = multiply(a, std::span<const Complex>(x_true));
  const auto lu = solve(a, b);
  SolverOptions g;
  g.kind = SolverKind::Gmres;
  const auto gm = solve(a, b, g);
  EXPECT_LE(lu.relative_residual, 1e-13);
  EXPECT_LE(gm.relative_residual, 1e-10);
  EXPECT_GT(gm.iterations, 0);
  EXPECT_FALSE(gm.residual_history.empty());
  double err_lu = 0.0;
  double err_gm = 0.0;
  for (int k = 0; k < 100; ++k) {
    err_lu = std::max(err_lu, std::abs(lu.x[k] - x_true[k]));
    err_gm = std::max(err_gm, std::abs(gm.x[k] - x_true[k]));
  }
  EXPECT_LE(err_lu, 1e-12);
  EXPECT_LE(err_gm, 1e-8);
  EXPECT_NEAR(relative_residual(a, lu.x, b), lu.relative_residual, 1e-15);
}

TEST(Linsolve, SingularMatrixReportsPivot) {
  const auto a = dense_to_csr({{1.0, 2.0, 0.0}, {2.0, 4.0, 0.0}, {0.0, 0.0, 3.0}});
  const std::vector<Complex> b{1.0, 1.0, 1.0};
  try {
    (void)solve(a, b);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    ASSERT_TRUE(e.pivot().has_value());
    EXPECT_TRUE(*e.pivot() == 0 || *e.pivot() == 1);
  }
}

TEST(Linsolve, GmresNonConvergenceCarriesHistory) {
  const auto a = random_sparse(200, 5);
  std::vector<Complex> b(200, 1.0);
  SolverOptions g;
  g.kind = SolverKind::Gmres;
  g.tolerance = 1e-30;
  g.max_iterations = 3;
  try {
    (void)solve(a, b, g);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_FALSE(e.residual_history().empty());
  }
}

TEST(Linsolve, ParseSolverKind) {
  EXPECT_EQ(parse_solver_kind("lu"), SolverKind::Lu);
  EXPECT_EQ(parse_solver_kind("gmres"), SolverKind::Gmres);
  EXPECT_THROW(parse_solver_kind("cg"), std::invalid_argument);
}

}  // namespace
}  // namespace maxwell
