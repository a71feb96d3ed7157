#pragma once

#include <span>
#include <vector>

#include "maxwell/fe_basis.hpp"
#include "maxwell/manufactured.hpp"

namespace maxwell {

/// Discrete field in V_h: one complex coefficient per global DOF.
struct FieldCoefficients {
  const FeSpace* space = nullptr;
  std::vector<Complex> values;
};

/// L2, curl and boundary-tangential norms, with the derived
/// |||v||| = (||curl v||^2 + k^2 ||v||^2)^(1/2) and the full energy norm
/// (|||v|||^2 + k lambda ||v_T||_Gamma^2)^(1/2).
struct NormSet {
  double l2 = 0.0;
  double curl = 0.0;
  double trace = 0.0;
  double energy = 0.0;
  double full_energy = 0.0;

  static NormSet from_squares(double l2_sq, double curl_sq, double trace_sq, const ProblemParams& params);
};

struct ErrorReport {
  NormSet abs;    // norms of E - u_h
  NormSet rel;    // abs divided by the same norm of E
  NormSet exact;  // norms of E under the same quadrature
};

/// Edge-element interpolant: every DOF functional applied to the exact field
/// on the physical entity. DOFs of shared edges/faces are evaluated once,
/// from the lowest-numbered incident element.
FieldCoefficients interpolate(const ExactSolution& exact, const FeSpace& space,
                              int quadrature_degree);

/// Norms of a discrete field.
NormSet field_norms(const FeSpace& space, std::span<const Complex> u, const ProblemParams& params,
                    int quadrature_degree);

/// Errors of u against the exact solution. Throws std::domain_error if E has
/// zero L2 norm; a relative entry whose exact norm vanishes (curl of a
/// constant field) is NaN.
ErrorReport error_norms(const FeSpace& space, std::span<const Complex> u,
                        const ExactSolution& exact, int quadrature_degree);

/// ||f||_Omega and ||g||_Gamma of the data generated by the exact solution.
struct DataNorms {
  double f = 0.0;
  double g = 0.0;
};
DataNorms data_norms(const Mesh& mesh, const ExactSolution& exact, int quadrature_degree);

/// (||curl u|| + k ||u|| + k ||u_T||_Gamma) / (||f|| + ||g||_Gamma).
double stability_ratio(const NormSet& discrete, const DataNorms& data, const ProblemParams& params);

double stability_ratio(const FeSpace& space, std::span<const Complex> u, const ExactSolution& exact,
                       int quadrature_degree);

}  // namespace maxwell
