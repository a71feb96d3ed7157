#include "maxwell/special_fn.hpp"

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

namespace maxwell::special {

namespace {

// Below this the closed forms lose digits to cancellation.
constexpr double kQuotientSeriesCutoff = 1e-3;
constexpr double kSlopeSeriesCutoff = 1.0;

}  // namespace

double j0(double z) { return boost::math::cyl_bessel_j(0, z); }

double j1(double z) { return boost::math::cyl_bessel_j(1, z); }

double j1_over_z(double z) {
  z = std::abs(z);
  if (z < kQuotientSeriesCutoff) {
    const double q = z * z;
    return 0.5 - q / 16.0 + q * q / 384.0;
  }
  return j1(z) / z;
}

double j1_over_z_slope(double z) {
  z = std::abs(z);
  if (z < kSlopeSeriesCutoff) {
    // sum_{m>=1} (-1)^m m (z/2)^(2m-2) / (4 m! (m+1)!)
    const double q = 0.25 * z * z;
    double power = 1.0;  // (z/2)^(2m-2)
    double fact = 2.0;   // m! (m+1)!
    double sum = 0.0;
    for (int m = 1; m <= 12; ++m) {
      const double term = m * power / (4.0 * fact);
      sum += (m % 2 == 1) ? -term : term;
      power *= q;
      fact *= static_cast<double>(m + 1) * static_cast<double>(m + 2);
    }
    return sum;
  }
  return (j0(z) - 2.0 * j1(z) / z) / (z * z);
}

}  // namespace maxwell::special
