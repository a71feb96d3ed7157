#include "maxwell/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maxwell {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree) {
    throw std::invalid_argument("quadrature degree " + std::to_string(degree) +
                                " unsupported; maximum is " +
                                std::to_string(kMaxQuadratureDegree));
  }
}

int points_for_degree(int degree) { return degree / 2 + 1; }

// n-point Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Recompute derivative at converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.0;
  }
}

// Gauss-Legendre on [0,1].
void unit_gauss(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  gauss_legendre(n, nodes, weights);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (nodes[i] + 1.0);
    weights[i] *= 0.5;
  }
}

}  // namespace

QuadratureRule interval_rule(int degree) {
  check_degree(degree);
  std::vector<double> x, w;
  unit_gauss(points_for_degree(degree), x, w);
  QuadratureRule rule;
  rule.exactness_degree = degree;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.points.emplace_back(x[i], 0.0, 0.0);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

QuadratureRule tri_rule(int degree) {
  check_degree(degree);
  // x = u, y = v (1 - u); Jacobian (1 - u) raises the degree in u by one.
  std::vector<double> xu, wu, xv, wv;
  unit_gauss(points_for_degree(degree + 1), xu, wu);
  unit_gauss(points_for_degree(degree), xv, wv);
  QuadratureRule rule;
  rule.exactness_degree = degree;
  for (std::size_t i = 0; i < xu.size(); ++i) {
    for (std::size_t j = 0; j < xv.size(); ++j) {
      const double u = xu[i];
      const double v = xv[j];
      rule.points.emplace_back(u, v * (1.0 - u), 0.0);
      rule.weights.push_back(wu[i] * wv[j] * (1.0 - u));
    }
  }
  return rule;
}

QuadratureRule tet_rule(int degree) {
  check_degree(degree);
  // x = u, y = v (1 - u), z = w (1 - u)(1 - v); Jacobian (1 - u)^2 (1 - v).
  std::vector<double> xu, wu, xv, wv, xw, ww;
  unit_gauss(points_for_degree(degree + 2), xu, wu);
  unit_gauss(points_for_degree(degree + 1), xv, wv);
  unit_gauss(points_for_degree(degree), xw, ww);
  QuadratureRule rule;
  rule.exactness_degree = degree;
  rule.points.reserve(xu.size() * xv.size() * xw.size());
  rule.weights.reserve(rule.points.capacity());
  for (std::size_t i = 0; i < xu.size(); ++i) {
    for (std::size_t j = 0; j < xv.size(); ++j) {
      for (std::size_t k = 0; k < xw.size(); ++k) {
        const double u = xu[i];
        const double v = xv[j];
        const double w = xw[k];
        rule.points.emplace_back(u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v));
        rule.weights.push_back(wu[i] * wv[j] * ww[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
      }
    }
  }
  return rule;
}

QuadraturePolicy QuadraturePolicy::standard(int p, double kappa, double h) {
  QuadraturePolicy policy;
  policy.assembly_degree = 2 * p + 2;
  const int oscillatory = static_cast<int>(std::ceil(2.0 * kappa * h)) + 2 * p;
  policy.load_degree = std::min(std::max(2 * p + 2, oscillatory), kMaxQuadratureDegree);
  return policy;
}

}  // namespace maxwell
