#pragma once

#include <functional>
#include <random>
#include <vector>

#include "maxwell/fe_basis.hpp"
#include "maxwell/types.hpp"

namespace maxwell {

/// Wave number kappa and impedance constant lambda, both strictly positive.
struct ProblemParams {
  double kappa = 1.0;
  double lambda = 1.0;

  void validate() const;
};

/// Exact field E with closed-form curl E and curl curl E, and the data it
/// induces for
///   curl curl E - kappa^2 E = f        in the unit cube,
///   curl E x nu - i kappa lambda E_T = g   on its boundary.
class ExactSolution {
 public:
  using Evaluator = std::function<CVec3(const Vec3&)>;

  ExactSolution(ProblemParams params, Evaluator field, Evaluator curl, Evaluator curl_curl);

  [[nodiscard]] const ProblemParams& params() const { return params_; }

  [[nodiscard]] CVec3 eval_E(const Vec3& x) const { return field_(x); }
  [[nodiscard]] CVec3 eval_curlE(const Vec3& x) const { return curl_(x); }
  [[nodiscard]] CVec3 eval_curlcurlE(const Vec3& x) const { return curl_curl_(x); }
  [[nodiscard]] CVec3 eval_f(const Vec3& x) const;
  /// Tangential by construction: g . nu = 0.
  [[nodiscard]] CVec3 eval_g(const Vec3& x, const Vec3& nu) const;

 private:
  ProblemParams params_;
  Evaluator field_;
  Evaluator curl_;
  Evaluator curl_curl_;
};

/// E = (sin(k y) J0(k r), cos(k z) J0(k r), i k J0(k r)), r = |x|.
ExactSolution bessel_solution(ProblemParams params);

/// Constant field; curl vanishes so f = -kappa^2 E.
ExactSolution constant_solution(ProblemParams params, const CVec3& value);

/// Complex vector polynomial sum_d sum_s c(d, s) m_s(x) e_d with exact
/// derivatives, used for consistency (patch) tests.
class PolynomialField {
 public:
  explicit PolynomialField(int degree);

  static PolynomialField random(int degree, std::mt19937_64& rng);

  [[nodiscard]] int degree() const { return monomials_.degree(); }
  [[nodiscard]] const MonomialSet& monomials() const { return monomials_; }
  Complex& coefficient(int component, int monomial) { return coeffs_[component * monomials_.size() + monomial]; }
  [[nodiscard]] Complex coefficient(int component, int monomial) const {
    return coeffs_[component * monomials_.size() + monomial];
  }

  [[nodiscard]] CVec3 value(const Vec3& x) const;
  [[nodiscard]] CVec3 curl(const Vec3& x) const;
  [[nodiscard]] CVec3 curl_curl(const Vec3& x) const;

 private:
  // d^|alpha| m_s / dx^alpha at x for |alpha| <= 2.
  [[nodiscard]] Complex derivative(int component, const Vec3& x, int dx, int dy, int dz) const;

  MonomialSet monomials_;
  std::vector<Complex> coeffs_;
};

ExactSolution polynomial_solution(ProblemParams params, PolynomialField field);

}  // namespace maxwell
