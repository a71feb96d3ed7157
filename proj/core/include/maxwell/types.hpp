#pragma once

#include <complex>

#include <Eigen/Dense>

namespace maxwell {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using Point3 = Vec3;

using VectorXc = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Bilinear cross product. Eigen's cross() conjugates its result for complex
/// operands.
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace maxwell
