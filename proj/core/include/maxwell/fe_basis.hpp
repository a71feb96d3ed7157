#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "maxwell/mesh.hpp"
#include "maxwell/quadrature.hpp"
#include "maxwell/types.hpp"

namespace maxwell {

/// Closed-form global DOF count of the order-p second-family space on the
/// M x M x M Kuhn cube mesh.
std::int64_t dof_count(int M, int p);

/// Number of local DOFs attached to each entity type for order p.
struct EntityLayout {
  int order = 1;
  int per_edge = 0;
  int per_face = 0;
  int per_interior = 0;
  int local_size = 0;

  static EntityLayout for_order(int p);

  [[nodiscard]] int edge_offset(int local_edge) const { return local_edge * per_edge; }
  [[nodiscard]] int face_offset(int local_face) const { return 6 * per_edge + local_face * per_face; }
  [[nodiscard]] int interior_offset() const { return 6 * per_edge + 4 * per_face; }
};

/// Scalar monomials x^a y^b z^c with a + b + c <= degree.
class MonomialSet {
 public:
  explicit MonomialSet(int degree);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int size() const { return static_cast<int>(exponents_.size()); }
  [[nodiscard]] const std::array<int, 3>& exponent(int i) const { return exponents_[i]; }

  void evaluate(const Vec3& x, std::span<double> values) const;
  void evaluate_with_gradient(const Vec3& x, std::span<double> values, std::span<Vec3> gradients) const;

 private:
  int degree_;
  std::vector<std::array<int, 3>> exponents_;
};

/// One term of a DOF functional: the functional value of a field v is the sum
/// of v(point) . direction over its samples (quadrature weights folded in).
struct FunctionalSample {
  Vec3 point;
  Vec3 direction;
};
using Functional = std::vector<FunctionalSample>;

/// Relative order of a tetrahedron's local vertices in the global numbering;
/// entry i is the rank (0..3) of local vertex i. Edge and face functionals are
/// oriented by rank, which makes them identical from every incident element.
using VertexRanks = std::array<int, 4>;
inline constexpr VertexRanks kIdentityRanks{0, 1, 2, 3};

/// Values and curls of every basis function at a set of reference points,
/// stored point-major: entry [q * size + i].
struct BasisTable {
  int num_points = 0;
  int num_basis = 0;
  std::vector<Vec3> values;
  std::vector<Vec3> curls;

  [[nodiscard]] const Vec3& value(int q, int i) const { return values[q * num_basis + i]; }
  [[nodiscard]] const Vec3& curl(int q, int i) const { return curls[q * num_basis + i]; }
};

/// Second-family Nedelec basis of (P_p)^3 on the reference tetrahedron, dual
/// to the moment functionals:
///   edges     int_e (v . t) L_k ds,           L_k Legendre on [0,1], k <= p
///   faces     int_f (v . q) dA,               q in RT_{p-1}(f)
///   interior  int_K (v . q) dx,               q in RT_{p-2}(K)
/// Built by inverting the functional/monomial Gram matrix.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int p, VertexRanks ranks = kIdentityRanks);

  [[nodiscard]] int order() const { return layout_.order; }
  [[nodiscard]] int size() const { return layout_.local_size; }
  [[nodiscard]] const EntityLayout& layout() const { return layout_; }
  [[nodiscard]] const VertexRanks& ranks() const { return ranks_; }
  [[nodiscard]] const MonomialSet& monomials() const { return monomials_; }

  /// Coefficients of basis function j in the vector-monomial basis
  /// {m_s e_d}, row index d * monomials().size() + s.
  [[nodiscard]] const Eigen::MatrixXd& coefficients() const { return coeffs_; }

  /// DOF functionals with sample points from quadrature of the given degree.
  [[nodiscard]] std::vector<Functional> functionals(int quadrature_degree) const;

  /// Matrix with entries l_i(phi_j); the identity up to rounding.
  [[nodiscard]] Eigen::MatrixXd duality_matrix() const;

  void evaluate(const Vec3& xhat, std::span<Vec3> values, std::span<Vec3> curls) const;
  [[nodiscard]] BasisTable tabulate(std::span<const Vec3> points) const;

  /// Vector-monomial coefficients of sum_j local[j] phi_j.
  [[nodiscard]] VectorXc to_monomial(std::span<const Complex> local) const;

  /// Applies every DOF functional to a reference-space field.
  template <class Field>
  [[nodiscard]] auto apply(Field&& field, int quadrature_degree) const {
    using Value = decltype(field(Vec3{}));
    using Scalar = typename Value::Scalar;
    const auto funcs = functionals(quadrature_degree);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(static_cast<Eigen::Index>(funcs.size()));
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      Scalar sum{0};
      for (const auto& s : funcs[i]) {
        sum += s.direction.template cast<Scalar>().dot(field(s.point));
      }
      out[static_cast<Eigen::Index>(i)] = sum;
    }
    return out;
  }

 private:
  EntityLayout layout_;
  VertexRanks ranks_;
  MonomialSet monomials_;
  Eigen::MatrixXd coeffs_;
};

/// Maps triangle-rule points (s, t) onto local face f of the reference
/// tetrahedron, x = v_a + s (v_b - v_a) + t (v_c - v_a) for kLocalFaces[f] =
/// (a, b, c). Also returns the two edge vectors.
std::vector<Vec3> map_to_reference_face(int local_face, std::span<const Vec3> st,
                                        Vec3* t1 = nullptr, Vec3* t2 = nullptr);

/// Covariant transform of a reference value: B^{-T} vhat.
inline Vec3 covariant_transform(const ElementMap& map, const Vec3& vhat) {
  return map.B_inv.transpose() * vhat;
}

/// Curl transform under the covariant map: B curlhat / det B.
inline Vec3 curl_transform(const ElementMap& map, const Vec3& curl_hat) {
  return map.B * curl_hat / map.det;
}

struct FieldSample {
  CVec3 value;
  CVec3 curl;
};

/// Value and curl at physical point x of the field with local coefficients
/// on the element described by map.
FieldSample push_forward(const ReferenceBasis& basis, std::span<const Complex> local,
                         const ElementMap& map, const Vec3& x);

/// Global numbering: edge DOFs first (edge-major), then face DOFs, then
/// element-interior DOFs. Local DOF order follows EntityLayout.
class DofMap {
 public:
  DofMap(const Mesh& mesh, int p);

  [[nodiscard]] int order() const { return layout_.order; }
  [[nodiscard]] const EntityLayout& layout() const { return layout_; }
  [[nodiscard]] int total_dofs() const { return total_; }
  [[nodiscard]] int local_size() const { return layout_.local_size; }

  [[nodiscard]] std::span<const int> element_dofs(int tet) const {
    return {dofs_.data() + static_cast<std::size_t>(tet) * layout_.local_size,
            static_cast<std::size_t>(layout_.local_size)};
  }
  /// Orientation data of a tetrahedron: ranks of its local vertices.
  [[nodiscard]] const VertexRanks& orientation(int tet) const { return ranks_[tet]; }

  [[nodiscard]] int edge_dof(int edge, int k) const { return edge * layout_.per_edge + k; }
  [[nodiscard]] int face_dof(int face, int k) const {
    return face_base_ + face * layout_.per_face + k;
  }
  [[nodiscard]] int interior_dof(int tet, int k) const {
    return interior_base_ + tet * layout_.per_interior + k;
  }

 private:
  EntityLayout layout_;
  int total_ = 0;
  int face_base_ = 0;
  int interior_base_ = 0;
  std::vector<int> dofs_;
  std::vector<VertexRanks> ranks_;
};

DofMap build_dof_map(const Mesh& mesh, int p);

/// Discrete space V_h: mesh, DOF map and one reference basis per distinct
/// element orientation.
class FeSpace {
 public:
  FeSpace(const Mesh& mesh, int p);

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] int order() const { return dofs_.order(); }
  [[nodiscard]] const DofMap& dofs() const { return dofs_; }
  [[nodiscard]] int total_dofs() const { return dofs_.total_dofs(); }

  [[nodiscard]] int variant(int tet) const { return variant_[tet]; }
  [[nodiscard]] const ReferenceBasis& basis(int tet) const { return variants_[variant_[tet]]; }
  [[nodiscard]] std::span<const ReferenceBasis> variants() const { return variants_; }

 private:
  const Mesh* mesh_;
  DofMap dofs_;
  std::vector<ReferenceBasis> variants_;
  std::vector<int> variant_;
};

}  // namespace maxwell
