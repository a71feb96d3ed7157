#include "maxwell/analysis.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "parallel.hpp"

namespace maxwell {

namespace {

struct SquaredParts {
  double err_l2 = 0.0;
  double err_curl = 0.0;
  double err_trace = 0.0;
  double ref_l2 = 0.0;
  double ref_curl = 0.0;
  double ref_trace = 0.0;

  SquaredParts& operator+=(const SquaredParts& o) {
    err_l2 += o.err_l2;
    err_curl += o.err_curl;
    err_trace += o.err_trace;
    ref_l2 += o.ref_l2;
    ref_curl += o.ref_curl;
    ref_trace += o.ref_trace;
    return *this;
  }
};

// Discrete field on one element, in vector-monomial form, evaluated with
// its covariant transform.
class ElementField {
 public:
  ElementField(const ReferenceBasis& basis, const ElementMap& map, std::span<const Complex> local)
      : mono_(&basis.monomials()),
        coeffs_(basis.to_monomial(local)),
        cov_(map.B_inv.transpose().cast<Complex>()),
        rot_((map.B / map.det).cast<Complex>()),
        values_(mono_->size()),
        grads_(mono_->size()) {}

  FieldSample at(const Vec3& xhat) {
    const int ns = mono_->size();
    mono_->evaluate_with_gradient(xhat, values_, grads_);
    CVec3 v = CVec3::Zero();
    CVec3 c = CVec3::Zero();
    for (int s = 0; s < ns; ++s) {
      const Complex ax = coeffs_[s];
      const Complex ay = coeffs_[ns + s];
      const Complex az = coeffs_[2 * ns + s];
      const Vec3& g = grads_[s];
      v += values_[s] * CVec3(ax, ay, az);
      c[0] += az * g[1] - ay * g[2];
      c[1] += ax * g[2] - az * g[0];
      c[2] += ay * g[0] - ax * g[1];
    }
    return {cov_ * v, rot_ * c};
  }

 private:
  const MonomialSet* mono_;
  VectorXc coeffs_;
  Eigen::Matrix3cd cov_;
  Eigen::Matrix3cd rot_;
  std::vector<double> values_;
  std::vector<Vec3> grads_;
};

std::vector<Complex> gather(const FeSpace& space, std::span<const Complex> u, int t) {
  const auto dofs = space.dofs().element_dofs(t);
  std::vector<Complex> local(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    local[i] = u[dofs[i]];
  }
  return local;
}

CVec3 tangential(const CVec3& v, const Vec3& nu) {
  const CVec3 n = nu.cast<Complex>();
  return v - n.dot(v) * n;
}

// Squared norms of E - u (or of u alone when exact is null) and of E.
SquaredParts integrate(const FeSpace& space, std::span<const Complex> u, const ExactSolution* exact,
                       int degree) {
  if (static_cast<int>(u.size()) != space.total_dofs()) {
    throw std::invalid_argument("coefficient vector length does not match the space");
  }
  const auto& mesh = space.mesh();
  const auto maps = mesh.element_maps();
  const auto vol = tet_rule(degree);
  const auto tri = tri_rule(degree);
  const int nt = static_cast<int>(mesh.num_tets());
  const auto bfaces = mesh.boundary_faces();
  const int nb = static_cast<int>(bfaces.size());

  std::vector<SquaredParts> per_tet(nt);
  detail::parallel_for(nt, 0, [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const auto& map = maps[t];
      const double jac = std::abs(map.det);
      ElementField field(space.basis(t), map, gather(space, u, t));
      SquaredParts acc;
      for (std::size_t q = 0; q < vol.size(); ++q) {
        const double w = vol.weights[q] * jac;
        const auto uh = field.at(vol.points[q]);
        CVec3 e_val = CVec3::Zero();
        CVec3 e_curl = CVec3::Zero();
        if (exact != nullptr) {
          const Vec3 x = map.to_physical(vol.points[q]);
          e_val = exact->eval_E(x);
          e_curl = exact->eval_curlE(x);
        }
        acc.err_l2 += w * (e_val - uh.value).squaredNorm();
        acc.err_curl += w * (e_curl - uh.curl).squaredNorm();
        acc.ref_l2 += w * e_val.squaredNorm();
        acc.ref_curl += w * e_curl.squaredNorm();
      }
      per_tet[t] = acc;
    }
  });

  std::vector<SquaredParts> per_face(nb);
  detail::parallel_for(nb, 0, [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const auto& bf = bfaces[k];
      const auto& map = maps[bf.tet];
      Vec3 t1, t2;
      const auto ref = map_to_reference_face(bf.local_face, tri.points, &t1, &t2);
      const double area = (map.B * t1).cross(map.B * t2).norm();
      ElementField field(space.basis(bf.tet), map, gather(space, u, bf.tet));
      SquaredParts acc;
      for (std::size_t q = 0; q < tri.size(); ++q) {
        const double w = tri.weights[q] * area;
        const CVec3 uh = tangential(field.at(ref[q]).value, bf.normal);
        CVec3 e_t = CVec3::Zero();
        if (exact != nullptr) {
          e_t = tangential(exact->eval_E(map.to_physical(ref[q])), bf.normal);
        }
        acc.err_trace += w * (e_t - uh).squaredNorm();
        acc.ref_trace += w * e_t.squaredNorm();
      }
      per_face[k] = acc;
    }
  });

  SquaredParts total;
  for (const auto& p : per_tet) {
    total += p;
  }
  for (const auto& p : per_face) {
    total += p;
  }
  return total;
}

}  // namespace

NormSet NormSet::from_squares(double l2_sq, double curl_sq, double trace_sq,
                              const ProblemParams& params) {
  const double k = params.kappa;
  NormSet n;
  n.l2 = std::sqrt(l2_sq);
  n.curl = std::sqrt(curl_sq);
  n.trace = std::sqrt(trace_sq);
  const double energy_sq = curl_sq + k * k * l2_sq;
  n.energy = std::sqrt(energy_sq);
  n.full_energy = std::sqrt(energy_sq + k * params.lambda * trace_sq);
  return n;
}

FieldCoefficients interpolate(const ExactSolution& exact, const FeSpace& space,
                              int quadrature_degree) {
  const auto& mesh = space.mesh();
  const auto& dofs = space.dofs();
  const auto maps = mesh.element_maps();
  const int nt = static_cast<int>(mesh.num_tets());
  const int n = dofs.local_size();

  // The lowest-numbered element containing a DOF evaluates it.
  std::vector<int> owner(dofs.total_dofs(), -1);
  for (int t = 0; t < nt; ++t) {
    for (const int d : dofs.element_dofs(t)) {
      if (owner[d] < 0) {
        owner[d] = t;
      }
    }
  }

  std::vector<std::vector<Functional>> funcs;
  funcs.reserve(space.variants().size());
  for (const auto& basis : space.variants()) {
    funcs.push_back(basis.functionals(quadrature_degree));
  }

  FieldCoefficients out;
  out.space = &space;
  out.values.assign(dofs.total_dofs(), Complex(0.0));
  detail::parallel_for(nt, 0, [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const auto& map = maps[t];
      const auto local = dofs.element_dofs(t);
      const auto& f = funcs[space.variant(t)];
      for (int i = 0; i < n; ++i) {
        if (owner[local[i]] != t) {
          continue;
        }
        Complex sum(0.0);
        for (const auto& s : f[i]) {
          const Vec3 dir = map.B * s.direction;
          const CVec3 e = exact.eval_E(map.to_physical(s.point));
          sum += dir[0] * e[0] + dir[1] * e[1] + dir[2] * e[2];
        }
        out.values[local[i]] = sum;
      }
    }
  });
  return out;
}

NormSet field_norms(const FeSpace& space, std::span<const Complex> u, const ProblemParams& params,
                    int quadrature_degree) {
  const auto parts = integrate(space, u, nullptr, quadrature_degree);
  return NormSet::from_squares(parts.err_l2, parts.err_curl, parts.err_trace, params);
}

ErrorReport error_norms(const FeSpace& space, std::span<const Complex> u,
                        const ExactSolution& exact, int quadrature_degree) {
  const auto parts = integrate(space, u, &exact, quadrature_degree);
  const auto& params = exact.params();
  ErrorReport report;
  report.abs = NormSet::from_squares(parts.err_l2, parts.err_curl, parts.err_trace, params);
  report.exact = NormSet::from_squares(parts.ref_l2, parts.ref_curl, parts.ref_trace, params);
  if (report.exact.l2 == 0.0) {
    throw std::domain_error("exact solution has zero norm; relative error undefined");
  }
  // A vanishing curl or trace of a nonzero field leaves that ratio undefined.
  auto ratio = [](double num, double den) {
    return den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : num / den;
  };
  report.rel.l2 = ratio(report.abs.l2, report.exact.l2);
  report.rel.curl = ratio(report.abs.curl, report.exact.curl);
  report.rel.trace = ratio(report.abs.trace, report.exact.trace);
  report.rel.energy = ratio(report.abs.energy, report.exact.energy);
  report.rel.full_energy = ratio(report.abs.full_energy, report.exact.full_energy);
  return report;
}

DataNorms data_norms(const Mesh& mesh, const ExactSolution& exact, int quadrature_degree) {
  const auto maps = mesh.element_maps();
  const auto vol = tet_rule(quadrature_degree);
  const auto tri = tri_rule(quadrature_degree);
  const int nt = static_cast<int>(mesh.num_tets());
  const auto bfaces = mesh.boundary_faces();
  const int nb = static_cast<int>(bfaces.size());

  std::vector<double> f_sq(nt, 0.0);
  detail::parallel_for(nt, 0, [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const auto& map = maps[t];
      const double jac = std::abs(map.det);
      double acc = 0.0;
      for (std::size_t q = 0; q < vol.size(); ++q) {
        acc += vol.weights[q] * jac * exact.eval_f(map.to_physical(vol.points[q])).squaredNorm();
      }
      f_sq[t] = acc;
    }
  });
  std::vector<double> g_sq(nb, 0.0);
  detail::parallel_for(nb, 0, [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const auto& bf = bfaces[k];
      const auto& map = maps[bf.tet];
      Vec3 t1, t2;
      const auto ref = map_to_reference_face(bf.local_face, tri.points, &t1, &t2);
      const double area = (map.B * t1).cross(map.B * t2).norm();
      double acc = 0.0;
      for (std::size_t q = 0; q < tri.size(); ++q) {
        acc += tri.weights[q] * area *
               exact.eval_g(map.to_physical(ref[q]), bf.normal).squaredNorm();
      }
      g_sq[k] = acc;
    }
  });
  DataNorms out;
  double fs = 0.0;
  double gs = 0.0;
  for (const double v : f_sq) {
    fs += v;
  }
  for (const double v : g_sq) {
    gs += v;
  }
  out.f = std::sqrt(fs);
  out.g = std::sqrt(gs);
  return out;
}

double stability_ratio(const NormSet& discrete, const DataNorms& data, const ProblemParams& params) {
  const double den = data.f + data.g;
  if (den == 0.0) {
    throw std::domain_error("zero data norm; stability ratio undefined");
  }
  const double k = params.kappa;
  return (discrete.curl + k * discrete.l2 + k * discrete.trace) / den;
}

double stability_ratio(const FeSpace& space, std::span<const Complex> u, const ExactSolution& exact,
                       int quadrature_degree) {
  const auto norms = field_norms(space, u, exact.params(), quadrature_degree);
  const auto data = data_norms(space.mesh(), exact, quadrature_degree);
  return stability_ratio(norms, data, exact.params());
}

}  // namespace maxwell
