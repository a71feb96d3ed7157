#pragma once

// Bessel functions of the first kind for real, non-negative arguments.

namespace maxwell::special {

double j0(double z);
double j1(double z);

/// J1(z)/z, continuous at z = 0 with value 1/2.
double j1_over_z(double z);

/// (d/dz [J1(z)/z]) / z = (J0(z) - 2 J1(z)/z) / z^2, with limit -1/8 at z = 0.
/// Appears in the Hessian of J0(k|x|).
double j1_over_z_slope(double z);

}  // namespace maxwell::special
