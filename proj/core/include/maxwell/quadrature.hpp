#pragma once

#include <vector>

#include "maxwell/types.hpp"

namespace maxwell {

/// Positive-weight Gauss-type rule on a reference cell. Points are stored in
/// reference coordinates: the unit interval [0,1], the triangle with vertices
/// (0,0),(1,0),(0,1) (third coordinate zero), or the tetrahedron with vertices
/// (0,0,0),(1,0,0),(0,1,0),(0,0,1).
struct QuadratureRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int exactness_degree = 0;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
};

inline constexpr int kMaxQuadratureDegree = 100;

/// Gauss-Legendre rule on [0,1] exact for polynomials of the given degree.
QuadratureRule interval_rule(int degree);

/// Collapsed-coordinate (Duffy) tensor-Gauss rule on the reference triangle.
QuadratureRule tri_rule(int degree);

/// Collapsed-coordinate (Duffy) tensor-Gauss rule on the reference tetrahedron.
QuadratureRule tet_rule(int degree);

/// Quadrature degrees used for one discretization.
struct QuadraturePolicy {
  int assembly_degree = 4;  // bilinear forms
  int load_degree = 4;      // load vector, error norms, interpolation

  /// 2p+2 for the bilinear forms; max(2p+2, ceil(2 kappa h) + 2p) for
  /// integrands containing the oscillatory exact solution.
  static QuadraturePolicy standard(int p, double kappa, double h);
};

}  // namespace maxwell
