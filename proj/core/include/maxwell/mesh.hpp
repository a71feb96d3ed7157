#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxwell/types.hpp"

namespace maxwell {

/// Affine map F(xhat) = B xhat + c from the reference tetrahedron
/// (0,0,0),(1,0,0),(0,1,0),(0,0,1) onto a mesh element.
struct ElementMap {
  Mat3 B;
  Vec3 c;
  Mat3 B_inv;
  double det = 0.0;

  static ElementMap from_vertices(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                                  const Vec3& v3);

  [[nodiscard]] Vec3 to_physical(const Vec3& xhat) const { return B * xhat + c; }
  [[nodiscard]] Vec3 to_reference(const Vec3& x) const { return B_inv * (x - c); }
};

/// Local entity numbering on a tetrahedron with local vertices 0..3.
/// Edge e joins kLocalEdges[e]; face f is opposite vertex f.
inline constexpr std::array<std::array<int, 2>, 6> kLocalEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr std::array<std::array<int, 3>, 4> kLocalFaces{
    {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

struct BoundaryFace {
  int face = -1;        // global face index
  int tet = -1;         // owning tetrahedron
  int local_face = -1;  // index into kLocalFaces for that tetrahedron
  Vec3 normal;          // unit outward normal
};

/// Conforming Kuhn subdivision of the unit cube into 6 M^3 tetrahedra.
/// Edges are oriented from lower to higher global vertex index; faces store
/// their vertices ascending.
class Mesh {
 public:
  static Mesh build_cube(int M);

  [[nodiscard]] int subdivisions() const { return M_; }
  [[nodiscard]] double h0() const { return 1.0 / M_; }
  /// Largest element diameter (the cube-cell body diagonal).
  [[nodiscard]] double h() const;

  [[nodiscard]] std::span<const Point3> vertices() const { return vertices_; }
  [[nodiscard]] std::span<const std::array<int, 4>> tets() const { return tets_; }
  [[nodiscard]] std::span<const std::array<int, 2>> edges() const { return edges_; }
  [[nodiscard]] std::span<const std::array<int, 3>> faces() const { return faces_; }
  [[nodiscard]] std::span<const BoundaryFace> boundary_faces() const { return boundary_faces_; }
  [[nodiscard]] std::span<const ElementMap> element_maps() const { return maps_; }

  [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
  [[nodiscard]] std::size_t num_tets() const { return tets_.size(); }
  [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
  [[nodiscard]] std::size_t num_faces() const { return faces_.size(); }

  /// Global edge / face indices of each tetrahedron's local entities.
  [[nodiscard]] const std::array<int, 6>& tet_edges(int t) const { return tet_edges_[t]; }
  [[nodiscard]] const std::array<int, 4>& tet_faces(int t) const { return tet_faces_[t]; }

  /// Tetrahedra incident to a face; the second entry is -1 on the boundary.
  [[nodiscard]] const std::array<int, 2>& face_tets(int f) const { return face_tets_[f]; }

  [[nodiscard]] double signed_volume(int t) const;

 private:
  int M_ = 0;
  std::vector<Point3> vertices_;
  std::vector<std::array<int, 4>> tets_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<BoundaryFace> boundary_faces_;
  std::vector<ElementMap> maps_;
  std::vector<std::array<int, 6>> tet_edges_;
  std::vector<std::array<int, 4>> tet_faces_;
  std::vector<std::array<int, 2>> face_tets_;
};

/// Largest M accepted by Mesh::build_cube: the order-3 DOF count must fit
/// in a 32-bit index.
int max_supported_subdivisions();

/// Unit outward normal of a face lying on one of the planes x_i = 0 or 1.
/// Throws std::invalid_argument for faces not contained in the boundary.
Vec3 classify_boundary_face(std::span<const Point3> vertices, const std::array<int, 3>& face);

}  // namespace maxwell
