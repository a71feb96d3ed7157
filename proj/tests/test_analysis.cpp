#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "maxwell/analysis.hpp"
#include "maxwell/study.hpp"

namespace maxwell {
namespace {

TEST(Analysis, ZeroFieldHasUnitRelativeError) {
  const auto mesh = Mesh::build_cube(2);
  const FeSpace space(mesh, 2);
  const auto exact = bessel_solution({5.0, 1.0});
  const std::vector<Complex> zero(space.total_dofs(), 0.0);
  const auto err = error_norms(space, zero, exact, 8);
  EXPECT_DOUBLE_EQ(err.rel.l2, 1.0);
  EXPECT_DOUBLE_EQ(err.rel.curl, 1.0);
  EXPECT_DOUBLE_EQ(err.rel.trace, 1.0);
  EXPECT_DOUBLE_EQ(err.rel.energy, 1.0);
}

TEST(Analysis, ExactNormsOfConstantField) {
  // ||c||^2 = |c|^2 over the unit cube; the boundary has area 6 and each
  // pair of opposite faces sees the two tangential components.
  const ProblemParams params{3.0, 2.0};
  const CVec3 c(Complex(1.0, 1.0), Complex(0.0, 2.0), Complex(-1.0, 0.0));
  const auto mesh = Mesh::build_cube(2);
  const FeSpace space(mesh, 1);
  const auto u = interpolate(constant_solution(params, c), space, 4);
  const auto n = field_norms(space, u.values, params, 4);
  const double c2 = c.squaredNorm();
  EXPECT_NEAR(n.l2 * n.l2, c2, 1e-13);
  EXPECT_NEAR(n.curl, 0.0, 1e-12);
  EXPECT_NEAR(n.trace * n.trace, 2.0 * 2.0 * c2, 1e-12);
  EXPECT_NEAR(n.energy * n.energy, 9.0 * c2, 1e-12);
  EXPECT_NEAR(n.full_energy * n.full_energy, 9.0 * c2 + 6.0 * 4.0 * c2, 1e-11);
}

TEST(Analysis, NormSetIdentities) {
  const auto n = NormSet::from_squares(4.0, 9.0, 16.0, {2.0, 0.5});
  EXPECT_DOUBLE_EQ(n.l2, 2.0);
  EXPECT_DOUBLE_EQ(n.curl, 3.0);
  EXPECT_DOUBLE_EQ(n.trace, 4.0);
  EXPECT_DOUBLE_EQ(n.energy, 5.0);  // sqrt(9 + 4 * 4)
  EXPECT_DOUBLE_EQ(n.full_energy, std::sqrt(25.0 + 16.0));
}

TEST(Analysis, InterpolationIsExactForPolynomialsOfDegreeP) {
  std::mt19937_64 rng(21);
  const auto mesh = Mesh::build_cube(2);
  for (int p = 1; p <= 3; ++p) {
    const ProblemParams params{2.0, 1.0};
    const auto exact = polynomial_solution(params, PolynomialField::random(p, rng));
    const FeSpace space(mesh, p);
    const auto u = interpolate(exact, space, 2 * p + 2);
    const auto err = error_norms(space, u.values, exact, 2 * p + 2);
    EXPECT_LE(err.rel.full_energy, 1e-12) << p;
  }
}

TEST(Analysis, InterpolationErrorRates) {
  const auto exact = bessel_solution({5.0, 1.0});
  for (int p = 1; p <= 3; ++p) {
    std::vector<double> h;
    std::vector<double> energy;
    std::vector<double> l2;
    for (const int M : {2, 4, 8}) {
      const auto mesh = Mesh::build_cube(M);
      const FeSpace space(mesh, p);
      const int q = QuadraturePolicy::standard(p, 5.0, mesh.h()).load_degree;
      const auto u = interpolate(exact, space, q);
      const auto err = error_norms(space, u.values, exact, q);
      h.push_back(mesh.h());
      energy.push_back(err.rel.energy);
      l2.push_back(err.rel.l2);
    }
    EXPECT_NEAR(fit_rate(h, energy), p, 0.3) << p;
    EXPECT_GE(fit_rate(h, l2), p + 1 - 0.3) << p;
  }
}

TEST(Analysis, NormsScaleLinearly) {
  const auto mesh = Mesh::build_cube(2);
  const FeSpace space(mesh, 2);
  const ProblemParams params{4.0, 1.0};
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d;
  std::vector<Complex> u(space.total_dofs());
  for (auto& v : u) {
    v = {d(rng), d(rng)};
  }
  std::vector<Complex> v(u);
  const Complex s(-1.5, 2.0);
  for (auto& x : v) {
    x *= s;
  }
  const auto a = field_norms(space, u, params, 6);
  const auto b = field_norms(space, v, params, 6);
  EXPECT_NEAR(b.energy, std::abs(s) * a.energy, 1e-12 * b.energy);
  EXPECT_NEAR(b.trace, std::abs(s) * a.trace, 1e-12 * b.trace);

  const DataNorms data{2.0, 3.0};
  const double expected = (a.curl + 4.0 * a.l2 + 4.0 * a.trace) / 5.0;
  EXPECT_NEAR(stability_ratio(a, data, params), expected, 1e-14 * expected);
  EXPECT_NEAR(stability_ratio(b, data, params), std::abs(s) * expected, 1e-12 * expected);
}

TEST(Analysis, DataNormsOfConstantField) {
  // f = -k^2 c, g = -i k lambda c_T.
  const ProblemParams params{2.0, 3.0};
  const CVec3 c(1.0, 0.0, 0.0);
  const auto d = data_norms(Mesh::build_cube(1), constant_solution(params, c), 4);
  EXPECT_NEAR(d.f, 4.0, 1e-13);
  EXPECT_NEAR(d.g, 6.0 * 2.0, 1e-12);  // |c_T|^2 = 1 on 4 of the 6 faces
}

TEST(Analysis, ZeroExactSolutionIsRejected) {
  const auto mesh = Mesh::build_cube(1);
  const FeSpace space(mesh, 1);
  const auto zero = constant_solution({1.0, 1.0}, CVec3::Zero());
  const std::vector<Complex> u(space.total_dofs(), 0.0);
  EXPECT_THROW((void)error_norms(space, u, zero, 4), std::domain_error);
}

}  // namespace
}  // namespace maxwell
