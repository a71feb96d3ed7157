#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "maxwell/special_fn.hpp"

namespace maxwell::special {
namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// Power series of J_n at 50 significant digits.
double series_j(int n, double zd) {
  const Wide z(zd);
  Wide term = 1;
  for (int k = 1; k <= n; ++k) {
    term *= z / 2 / k;
  }
  const Wide q = z * z / 4;
  Wide sum = 0;
  for (int m = 0; m < 120; ++m) {
    sum += term;
    term *= -q / ((m + 1) * (m + 1 + n));
  }
  return sum.convert_to<double>();
}

// Hankel asymptotic expansion of J_n for large z.
double asymptotic_j(int n, double z) {
  const double mu = 4.0 * n * n;
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;
  for (int k = 0; k < 12; ++k) {
    if (k > 0) {
      term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * z);
    }
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      default: q -= term; break;
    }
  }
  const double chi = z - (n / 2.0 + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

TEST(SpecialFn, ValuesAtZero) {
  EXPECT_EQ(j0(0.0), 1.0);
  EXPECT_EQ(j1(0.0), 0.0);
  EXPECT_EQ(j1_over_z(0.0), 0.5);
  EXPECT_DOUBLE_EQ(j1_over_z_slope(0.0), -0.125);
}

TEST(SpecialFn, FirstZeroOfJ0) { EXPECT_LE(std::abs(j0(2.404825557695773)), 1e-12); }

TEST(SpecialFn, AgreesWithExtendedPrecisionSeries) {
  for (int i = 0; i <= 1200; ++i) {
    const double z = 0.01 * i;
    EXPECT_NEAR(j0(z), series_j(0, z), 1e-13) << z;
    EXPECT_NEAR(j1(z), series_j(1, z), 1e-13) << z;
  }
}

TEST(SpecialFn, AgreesWithAsymptoticFormForLargeArguments) {
  for (double z = 50.0; z <= 500.0; z += 0.37) {
    EXPECT_NEAR(j0(z), asymptotic_j(0, z), 1e-10) << z;
    EXPECT_NEAR(j1(z), asymptotic_j(1, z), 1e-10) << z;
  }
}

TEST(SpecialFn, DerivativeOfJ0IsMinusJ1) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  const double h = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const double z = dist(rng) + 1e-3;
    const double fd = (j0(z + h) - j0(z - h)) / (2.0 * h);
    EXPECT_NEAR(fd, -j1(z), 1e-6) << z;
  }
}

TEST(SpecialFn, RecurrenceResidual) {
  // J1' = J0 - J1 / z
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> dist(0.5, 100.0);
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const double z = dist(rng);
    const double d = (j1(z + h) - j1(z - h)) / (2.0 * h);
    EXPECT_LE(std::abs(j0(z) - d - j1(z) / z), 1e-9) << z;
  }
}

TEST(SpecialFn, RegularizedQuotientsAreContinuous) {
  for (const double z : {1e-8, 1e-4, 9.99e-4, 1.001e-3, 0.3, 0.999, 1.001, 3.0, 40.0}) {
    EXPECT_NEAR(j1_over_z(z), series_j(1, z) / z, 1e-14) << z;
    // (J0 - 2 J1/z) / z^2 from the 50-digit series.
    const Wide wz(z);
    const Wide j0w = [&] {
      Wide s = 0, t = 1, q = wz * wz / 4;
      for (int m = 0; m < 120; ++m) { s += t; t *= -q / ((m + 1) * (m + 1)); }
      return s;
    }();
    const Wide j1w = [&] {
      Wide s = 0, t = wz / 2, q = wz * wz / 4;
      for (int m = 0; m < 120; ++m) { s += t; t *= -q / ((m + 1) * (m + 2)); }
      return s;
    }();
    const double slope = ((j0w - 2 * j1w / wz) / (wz * wz)).convert_to<double>();
    EXPECT_NEAR(j1_over_z_slope(z), slope, 1e-13) << z;
  }
}

}  // namespace
}  // namespace maxwell::special
