#pragma once

#include <vector>

#include "maxwell/fe_basis.hpp"
#include "maxwell/manufactured.hpp"
#include "maxwell/quadrature.hpp"
#include "maxwell/sparse.hpp"

namespace maxwell {

/// Galerkin system A x = b for a(u, v) = (curl u, curl v) - k^2 (u, v)
/// - i k lambda <u_T, v_T> with A(i, j) = a(phi_j, phi_i) and
/// b(i) = (f, phi_i) + <g, phi_i,T>, together with its parts
/// S (curl-curl), Mv (volume mass), B (boundary tangential mass).
/// All five matrices share one sparsity pattern.
struct AssembledSystem {
  ProblemParams params;
  ComplexSparseMatrix A;
  std::vector<Complex> b;
  RealSparseMatrix S;
  RealSparseMatrix Mv;
  RealSparseMatrix B;
};

struct AssemblyOptions {
  QuadraturePolicy quadrature;
  int threads = 0;  // 0: hardware concurrency
};

/// Pattern of all DOF pairs sharing an element; values zero.
RealSparseMatrix build_sparsity(const FeSpace& space);

AssembledSystem assemble(const FeSpace& space, const ExactSolution& exact,
                         const AssemblyOptions& options);

}  // namespace maxwell
