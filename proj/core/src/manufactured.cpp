#include "maxwell/manufactured.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "maxwell/special_fn.hpp"

namespace maxwell {

void ProblemParams::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("wave number must be positive");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("impedance constant must be positive");
  }
}

ExactSolution::ExactSolution(ProblemParams params, Evaluator field, Evaluator curl,
                             Evaluator curl_curl)
    : params_(params),
      field_(std::move(field)),
      curl_(std::move(curl)),
      curl_curl_(std::move(curl_curl)) {
  params_.validate();
}

CVec3 ExactSolution::eval_f(const Vec3& x) const {
  return curl_curl_(x) - params_.kappa * params_.kappa * field_(x);
}

CVec3 ExactSolution::eval_g(const Vec3& x, const Vec3& nu) const {
  const CVec3 n = nu.cast<Complex>();
  const CVec3 e = field_(x);
  const CVec3 e_t = e - n.dot(e) * n;  // n is real, so dot() conjugates nothing
  const CVec3 g = cross(curl_(x), n) - kI * params_.kappa * params_.lambda * e_t;
  // Remove the rounding-level normal component left by the subtraction.
  return g - n.dot(g) * n;
}

namespace {

// With z = k r, J = J0(z), Q = J1(z)/z, R = Q'(z)/z:
//   grad J      = -k^2 Q x
//   Hess J      = -k^2 (Q I + k^2 R x x^T)
//   Laplacian J = -k^2 (J + Q)
struct RadialTerms {
  double J;
  Vec3 grad;
  Mat3 hess;
  double lap;
};

RadialTerms radial_terms(double k, const Vec3& x) {
  const double z = k * x.norm();
  const double J = special::j0(z);
  const double Q = special::j1_over_z(z);
  const double R = special::j1_over_z_slope(z);
  const double k2 = k * k;
  return {J, -k2 * Q * x, -k2 * (Q * Mat3::Identity() + k2 * R * x * x.transpose()), -k2 * (J + Q)};
}

}  // namespace

ExactSolution bessel_solution(ProblemParams params) {
  params.validate();
  const double k = params.kappa;

  auto field = [k](const Vec3& x) -> CVec3 {
    const double J = special::j0(k * x.norm());
    return {Complex(std::sin(k * x[1]) * J), Complex(std::cos(k * x[2]) * J), kI * k * J};
  };

  // E1 = sin(ky) J, E2 = cos(kz) J, E3 = i k J, G = grad J:
  //   (curl E)_x = d_y E3 - d_z E2 = i k G_y + k sin(kz) J - cos(kz) G_z
  //   (curl E)_y = d_z E1 - d_x E3 = sin(ky) G_z - i k G_x
  //   (curl E)_z = d_x E2 - d_y E1 = cos(kz) G_x - k cos(ky) J - sin(ky) G_y
  auto curl = [k](const Vec3& x) -> CVec3 {
    const auto t = radial_terms(k, x);
    const double sy = std::sin(k * x[1]);
    const double cy = std::cos(k * x[1]);
    const double sz = std::sin(k * x[2]);
    const double cz = std::cos(k * x[2]);
    const Vec3& G = t.grad;
    return {kI * k * G[1] + k * sz * t.J - cz * G[2],
            Complex(sy * G[2]) - kI * k * G[0],
            Complex(cz * G[0] - k * cy * t.J - sy * G[1])};
  };

  // curl curl E = grad div E - Laplacian E with
  //   div E = sin(ky) G_x + cos(kz) G_y + i k G_z
  //   Lap E1 = -k^2 sin(ky) J + 2 k cos(ky) G_y + sin(ky) Lap J
  //   Lap E2 = -k^2 cos(kz) J - 2 k sin(kz) G_z + cos(kz) Lap J
  //   Lap E3 = i k Lap J
  auto curl_curl = [k](const Vec3& x) -> CVec3 {
    const auto t = radial_terms(k, x);
    const double sy = std::sin(k * x[1]);
    const double cy = std::cos(k * x[1]);
    const double sz = std::sin(k * x[2]);
    const double cz = std::cos(k * x[2]);
    const Vec3& G = t.grad;
    const Mat3& H = t.hess;
    const double k2 = k * k;
    const CVec3 grad_div(
        sy * H(0, 0) + cz * H(0, 1) + kI * k * H(0, 2),
        k * cy * G[0] + sy * H(0, 1) + cz * H(1, 1) + kI * k * H(1, 2),
        sy * H(0, 2) - k * sz * G[1] + cz * H(1, 2) + kI * k * H(2, 2));
    const CVec3 lap(-k2 * sy * t.J + 2.0 * k * cy * G[1] + sy * t.lap,
                    -k2 * cz * t.J - 2.0 * k * sz * G[2] + cz * t.lap,
                    kI * k * t.lap);
    return grad_div - lap;
  };

  return ExactSolution(params, field, curl, curl_curl);
}

ExactSolution constant_solution(ProblemParams params, const CVec3& value) {
  auto field = [value](const Vec3&) { return value; };
  auto zero = [](const Vec3&) -> CVec3 { return CVec3::Zero(); };
  return ExactSolution(params, field, zero, zero);
}

PolynomialField::PolynomialField(int degree)
    : monomials_(degree), coeffs_(3 * static_cast<std::size_t>(monomials_.size()), Complex(0.0)) {}

PolynomialField PolynomialField::random(int degree, std::mt19937_64& rng) {
  PolynomialField field(degree);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& c : field.coeffs_) {
    c = Complex(dist(rng), dist(rng));
  }
  return field;
}

Complex PolynomialField::derivative(int component, const Vec3& x, int dx, int dy, int dz) const {
  const std::array<int, 3> order{dx, dy, dz};
  Complex sum(0.0);
  for (int s = 0; s < monomials_.size(); ++s) {
    const Complex c = coeffs_[component * monomials_.size() + s];
    if (c == Complex(0.0)) {
      continue;
    }
    const auto& e = monomials_.exponent(s);
    double term = 1.0;
    for (int d = 0; d < 3; ++d) {
      if (e[d] < order[d]) {
        term = 0.0;
        break;
      }
      for (int i = 0; i < order[d]; ++i) {
        term *= e[d] - i;
      }
      term *= std::pow(x[d], e[d] - order[d]);
    }
    sum += c * term;
  }
  return sum;
}

CVec3 PolynomialField::value(const Vec3& x) const {
  return {derivative(0, x, 0, 0, 0), derivative(1, x, 0, 0, 0), derivative(2, x, 0, 0, 0)};
}

CVec3 PolynomialField::curl(const Vec3& x) const {
  return {derivative(2, x, 0, 1, 0) - derivative(1, x, 0, 0, 1),
          derivative(0, x, 0, 0, 1) - derivative(2, x, 1, 0, 0),
          derivative(1, x, 1, 0, 0) - derivative(0, x, 0, 1, 0)};
}

CVec3 PolynomialField::curl_curl(const Vec3& x) const {
  // grad div - Laplacian, componentwise.
  auto second = [&](int comp, int a, int b) {
    std::array<int, 3> o{0, 0, 0};
    ++o[a];
    ++o[b];
    return derivative(comp, x, o[0], o[1], o[2]);
  };
  CVec3 out;
  for (int i = 0; i < 3; ++i) {
    Complex grad_div(0.0);
    Complex lap(0.0);
    for (int j = 0; j < 3; ++j) {
      grad_div += second(j, i, j);
      lap += second(i, j, j);
    }
    out[i] = grad_div - lap;
  }
  return out;
}

ExactSolution polynomial_solution(ProblemParams params, PolynomialField field) {
  auto shared = std::make_shared<const PolynomialField>(std::move(field));
  return ExactSolution(
      params, [shared](const Vec3& x) { return shared->value(x); },
      [shared](const Vec3& x) { return shared->curl(x); },
      [shared](const Vec3& x) { return shared->curl_curl(x); });
}

}  // namespace maxwell
