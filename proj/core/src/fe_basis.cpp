#include "maxwell/fe_basis.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxwell {

namespace {

const std::array<Vec3, 4> kRefVertices{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0),
                                       Vec3(0, 0, 1)};

void check_order(int p) {
  if (p < 1 || p > 3) {
    throw std::invalid_argument("unsupported element order " + std::to_string(p) +
                                "; supported orders are 1, 2, 3");
  }
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r *= x;
  }
  return r;
}

// Legendre polynomial of degree k on [0,1].
double shifted_legendre(int k, double s) {
  const double x = 2.0 * s - 1.0;
  double p0 = 1.0;
  if (k == 0) {
    return p0;
  }
  double p1 = x;
  for (int n = 2; n <= k; ++n) {
    const double pn = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = pn;
  }
  return p1;
}

// Raviart-Thomas-type space D_m = (P_{m-1})^d + x P~_{m-1} in d = 2 or 3
// variables, evaluated at a point given in the entity's own coordinates.
std::vector<Vec3> rt_space(int dim, int m, const Vec3& x) {
  std::vector<Vec3> out;
  if (m < 1) {
    return out;
  }
  const int deg = m - 1;
  std::vector<std::array<int, 3>> all;
  std::vector<std::array<int, 3>> top;
  for (int total = 0; total <= deg; ++total) {
    for (int a = total; a >= 0; --a) {
      if (dim == 2) {
        all.push_back({a, total - a, 0});
      } else {
        for (int b = total - a; b >= 0; --b) {
          all.push_back({a, b, total - a - b});
        }
      }
    }
  }
  for (const auto& e : all) {
    if (e[0] + e[1] + e[2] == deg) {
      top.push_back(e);
    }
  }
  auto mono = [&](const std::array<int, 3>& e) {
    return ipow(x[0], e[0]) * ipow(x[1], e[1]) * ipow(x[2], e[2]);
  };
  for (int d = 0; d < dim; ++d) {
    for (const auto& e : all) {
      Vec3 v = Vec3::Zero();
      v[d] = mono(e);
      out.push_back(v);
    }
  }
  for (const auto& e : top) {
    Vec3 v = Vec3::Zero();
    for (int d = 0; d < dim; ++d) {
      v[d] = x[d] * mono(e);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::int64_t dof_count(int M, int p) {
  const std::int64_t m = M;
  const std::int64_t q = p;
  return m * (q + 1) *
         (3 * m * m * q * q + 3 * m * m * q + m * m + 6 * m * q + 3 * m + 3);
}

EntityLayout EntityLayout::for_order(int p) {
  check_order(p);
  EntityLayout l;
  l.order = p;
  l.per_edge = p + 1;
  l.per_face = p * p - 1;
  l.per_interior = (p - 2) * (p - 1) * (p + 1) / 2;
  l.local_size = 6 * l.per_edge + 4 * l.per_face + l.per_interior;
  return l;
}

MonomialSet::MonomialSet(int degree) : degree_(degree) {
  for (int total = 0; total <= degree; ++total) {
    for (int a = total; a >= 0; --a) {
      for (int b = total - a; b >= 0; --b) {
        exponents_.push_back({a, b, total - a - b});
      }
    }
  }
}

void MonomialSet::evaluate(const Vec3& x, std::span<double> values) const {
  std::array<std::array<double, 4>, 3> pw{};
  for (int d = 0; d < 3; ++d) {
    pw[d][0] = 1.0;
    for (int k = 1; k <= degree_; ++k) {
      pw[d][k] = pw[d][k - 1] * x[d];
    }
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    const auto& e = exponents_[i];
    values[i] = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
  }
}

void MonomialSet::evaluate_with_gradient(const Vec3& x, std::span<double> values,
                                         std::span<Vec3> gradients) const {
  std::array<std::array<double, 4>, 3> pw{};
  for (int d = 0; d < 3; ++d) {
    pw[d][0] = 1.0;
    for (int k = 1; k <= degree_; ++k) {
      pw[d][k] = pw[d][k - 1] * x[d];
    }
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    const auto& e = exponents_[i];
    values[i] = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
    gradients[i] = Vec3(e[0] > 0 ? e[0] * pw[0][e[0] - 1] * pw[1][e[1]] * pw[2][e[2]] : 0.0,
                        e[1] > 0 ? e[1] * pw[0][e[0]] * pw[1][e[1] - 1] * pw[2][e[2]] : 0.0,
                        e[2] > 0 ? e[2] * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2] - 1] : 0.0);
  }
}

ReferenceBasis::ReferenceBasis(int p, VertexRanks ranks)
    : layout_(EntityLayout::for_order(p)), ranks_(ranks), monomials_(p) {
  auto sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != kIdentityRanks) {
    throw std::invalid_argument("vertex ranks must be a permutation of 0..3");
  }
  const int n = layout_.local_size;
  const int ns = monomials_.size();
  if (3 * ns != n) {
    throw std::logic_error("second-family DOF count does not match dim (P_p)^3");
  }

  // Gram(i, d*ns + s) = l_i(m_s e_d); functionals of degree <= 2p are exact
  // with quadrature of degree 2p.
  const auto funcs = functionals(2 * p);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> mono(ns);
  for (int i = 0; i < n; ++i) {
    for (const auto& sample : funcs[i]) {
      monomials_.evaluate(sample.point, mono);
      for (int d = 0; d < 3; ++d) {
        for (int s = 0; s < ns; ++s) {
          gram(i, d * ns + s) += mono[s] * sample.direction[d];
        }
      }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (!lu.isInvertible()) {
    throw std::logic_error("DOF functionals are not unisolvent");
  }
  coeffs_ = lu.inverse();
}

std::vector<Functional> ReferenceBasis::functionals(int quadrature_degree) const {
  const int p = layout_.order;
  std::vector<Functional> funcs;
  funcs.reserve(layout_.local_size);

  const auto line = interval_rule(quadrature_degree);
  for (const auto& edge : kLocalEdges) {
    int a = edge[0];
    int b = edge[1];
    if (ranks_[a] > ranks_[b]) {
      std::swap(a, b);
    }
    const Vec3 tangent = kRefVertices[b] - kRefVertices[a];
    for (int k = 0; k <= p; ++k) {
      Functional f;
      f.reserve(line.size());
      for (std::size_t q = 0; q < line.size(); ++q) {
        const double s = line.points[q][0];
        f.push_back({kRefVertices[a] + s * tangent,
                     line.weights[q] * shifted_legendre(k, s) * tangent});
      }
      funcs.push_back(std::move(f));
    }
  }

  if (layout_.per_face > 0) {
    const auto tri = tri_rule(quadrature_degree);
    for (const auto& face : kLocalFaces) {
      std::array<int, 3> v = face;
      std::sort(v.begin(), v.end(), [&](int x, int y) { return ranks_[x] < ranks_[y]; });
      const Vec3 t1 = kRefVertices[v[1]] - kRefVertices[v[0]];
      const Vec3 t2 = kRefVertices[v[2]] - kRefVertices[v[0]];
      std::vector<Functional> block(layout_.per_face);
      for (std::size_t q = 0; q < tri.size(); ++q) {
        const Vec3& st = tri.points[q];
        const Vec3 point = kRefVertices[v[0]] + st[0] * t1 + st[1] * t2;
        const auto tests = rt_space(2, p - 1, st);
        for (int k = 0; k < layout_.per_face; ++k) {
          block[k].push_back({point, tri.weights[q] * (tests[k][0] * t1 + tests[k][1] * t2)});
        }
      }
      for (auto& f : block) {
        funcs.push_back(std::move(f));
      }
    }
  }

  if (layout_.per_interior > 0) {
    const auto vol = tet_rule(quadrature_degree);
    std::vector<Functional> block(layout_.per_interior);
    for (std::size_t q = 0; q < vol.size(); ++q) {
      const auto tests = rt_space(3, p - 2, vol.points[q]);
      for (int k = 0; k < layout_.per_interior; ++k) {
        block[k].push_back({vol.points[q], vol.weights[q] * tests[k]});
      }
    }
    for (auto& f : block) {
      funcs.push_back(std::move(f));
    }
  }
  return funcs;
}

Eigen::MatrixXd ReferenceBasis::duality_matrix() const {
  const int n = size();
  const auto funcs = functionals(2 * order() + 2);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  std::vector<Vec3> values(n), curls(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& sample : funcs[i]) {
      evaluate(sample.point, values, curls);
      for (int j = 0; j < n; ++j) {
        out(i, j) += values[j].dot(sample.direction);
      }
    }
  }
  return out;
}

void ReferenceBasis::evaluate(const Vec3& xhat, std::span<Vec3> values, std::span<Vec3> curls) const {
  const int ns = monomials_.size();
  const int n = size();
  std::array<double, 20> mono{};
  std::array<Vec3, 20> grad{};
  monomials_.evaluate_with_gradient(xhat, std::span<double>(mono.data(), ns),
                                    std::span<Vec3>(grad.data(), ns));
  for (int j = 0; j < n; ++j) {
    Vec3 v = Vec3::Zero();
    Vec3 c = Vec3::Zero();
    for (int s = 0; s < ns; ++s) {
      const double ax = coeffs_(s, j);
      const double ay = coeffs_(ns + s, j);
      const double az = coeffs_(2 * ns + s, j);
      v += mono[s] * Vec3(ax, ay, az);
      const Vec3& g = grad[s];
      // curl(a_x e_x + a_y e_y + a_z e_z) with a_d = coefficient * m_s
      c[0] += az * g[1] - ay * g[2];
      c[1] += ax * g[2] - az * g[0];
      c[2] += ay * g[0] - ax * g[1];
    }
    values[j] = v;
    curls[j] = c;
  }
}

BasisTable ReferenceBasis::tabulate(std::span<const Vec3> points) const {
  BasisTable table;
  table.num_points = static_cast<int>(points.size());
  table.num_basis = size();
  table.values.resize(points.size() * size());
  table.curls.resize(points.size() * size());
  for (std::size_t q = 0; q < points.size(); ++q) {
    evaluate(points[q], std::span<Vec3>(table.values.data() + q * size(), size()),
             std::span<Vec3>(table.curls.data() + q * size(), size()));
  }
  return table;
}

VectorXc ReferenceBasis::to_monomial(std::span<const Complex> local) const {
  const Eigen::Map<const VectorXc> c(local.data(), static_cast<Eigen::Index>(local.size()));
  return coeffs_.cast<Complex>() * c;
}

std::vector<Vec3> map_to_reference_face(int local_face, std::span<const Vec3> st, Vec3* t1,
                                        Vec3* t2) {
  const auto& f = kLocalFaces.at(static_cast<std::size_t>(local_face));
  const Vec3 a = kRefVertices[f[0]];
  const Vec3 e1 = kRefVertices[f[1]] - a;
  const Vec3 e2 = kRefVertices[f[2]] - a;
  std::vector<Vec3> out;
  out.reserve(st.size());
  for (const auto& p : st) {
    out.push_back(a + p[0] * e1 + p[1] * e2);
  }
  if (t1 != nullptr) {
    *t1 = e1;
  }
  if (t2 != nullptr) {
    *t2 = e2;
  }
  return out;
}

FieldSample push_forward(const ReferenceBasis& basis, std::span<const Complex> local,
                         const ElementMap& map, const Vec3& x) {
  const Vec3 xhat = map.to_reference(x);
  std::vector<Vec3> values(basis.size()), curls(basis.size());
  basis.evaluate(xhat, values, curls);
  CVec3 v = CVec3::Zero();
  CVec3 c = CVec3::Zero();
  for (int j = 0; j < basis.size(); ++j) {
    v += local[j] * values[j].cast<Complex>();
    c += local[j] * curls[j].cast<Complex>();
  }
  return {map.B_inv.transpose().cast<Complex>() * v, map.B.cast<Complex>() * c / map.det};
}

DofMap::DofMap(const Mesh& mesh, int p) : layout_(EntityLayout::for_order(p)) {
  const auto ne = static_cast<std::int64_t>(mesh.num_edges());
  const auto nf = static_cast<std::int64_t>(mesh.num_faces());
  const auto nt = static_cast<std::int64_t>(mesh.num_tets());
  const std::int64_t total =
      ne * layout_.per_edge + nf * layout_.per_face + nt * layout_.per_interior;
  if (total > std::numeric_limits<int>::max()) {
    throw std::overflow_error("DOF count exceeds the 32-bit index range");
  }
  total_ = static_cast<int>(total);
  face_base_ = static_cast<int>(ne * layout_.per_edge);
  interior_base_ = static_cast<int>(face_base_ + nf * layout_.per_face);

  const int n = layout_.local_size;
  dofs_.resize(static_cast<std::size_t>(nt) * n);
  ranks_.resize(static_cast<std::size_t>(nt));
  const auto tets = mesh.tets();
  for (int t = 0; t < static_cast<int>(nt); ++t) {
    const auto& tet = tets[t];
    VertexRanks r{};
    for (int i = 0; i < 4; ++i) {
      r[i] = static_cast<int>(std::count_if(tet.begin(), tet.end(), [&](int v) { return v < tet[i]; }));
    }
    ranks_[t] = r;
    int* out = dofs_.data() + static_cast<std::size_t>(t) * n;
    const auto& edges = mesh.tet_edges(t);
    for (int e = 0; e < 6; ++e) {
      for (int k = 0; k < layout_.per_edge; ++k) {
        out[layout_.edge_offset(e) + k] = edge_dof(edges[e], k);
      }
    }
    const auto& faces = mesh.tet_faces(t);
    for (int f = 0; f < 4; ++f) {
      for (int k = 0; k < layout_.per_face; ++k) {
        out[layout_.face_offset(f) + k] = face_dof(faces[f], k);
      }
    }
    for (int k = 0; k < layout_.per_interior; ++k) {
      out[layout_.interior_offset() + k] = interior_dof(t, k);
    }
  }
}

DofMap build_dof_map(const Mesh& mesh, int p) { return DofMap(mesh, p); }

FeSpace::FeSpace(const Mesh& mesh, int p) : mesh_(&mesh), dofs_(mesh, p) {
  std::map<VertexRanks, int> index;
  variant_.resize(mesh.num_tets());
  for (int t = 0; t < static_cast<int>(mesh.num_tets()); ++t) {
    const auto& r = dofs_.orientation(t);
    auto [it, inserted] = index.try_emplace(r, static_cast<int>(variants_.size()));
    if (inserted) {
      variants_.emplace_back(p, r);
    }
    variant_[t] = it->second;
  }
}

}  // namespace maxwell
