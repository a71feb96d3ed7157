#include "maxwell/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "maxwell/fe_basis.hpp"

namespace maxwell {

ElementMap ElementMap::from_vertices(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                                     const Vec3& v3) {
  ElementMap map;
  map.B.col(0) = v1 - v0;
  map.B.col(1) = v2 - v0;
  map.B.col(2) = v3 - v0;
  map.c = v0;
  map.det = map.B.determinant();
  if (map.det == 0.0 || !std::isfinite(map.det)) {
    throw std::domain_error("degenerate element map");
  }
  map.B_inv = map.B.inverse();
  return map;
}

int max_supported_subdivisions() {
  int M = 1;
  while (dof_count(M + 1, 3) <= std::numeric_limits<int>::max()) {
    ++M;
  }
  return M;
}

Vec3 classify_boundary_face(std::span<const Point3> vertices, const std::array<int, 3>& face) {
  for (int axis = 0; axis < 3; ++axis) {
    for (const double plane : {0.0, 1.0}) {
      const bool on_plane = std::all_of(face.begin(), face.end(), [&](int v) {
        return vertices[v][axis] == plane;
      });
      if (on_plane) {
        Vec3 normal = Vec3::Zero();
        normal[axis] = plane == 0.0 ? -1.0 : 1.0;
        return normal;
      }
    }
  }
  throw std::invalid_argument("face is not contained in the boundary of the unit cube");
}

double Mesh::h() const { return std::sqrt(3.0) / M_; }

double Mesh::signed_volume(int t) const {
  const auto& tet = tets_[t];
  const Vec3 a = vertices_[tet[1]] - vertices_[tet[0]];
  const Vec3 b = vertices_[tet[2]] - vertices_[tet[0]];
  const Vec3 c = vertices_[tet[3]] - vertices_[tet[0]];
  return a.dot(b.cross(c)) / 6.0;
}

Mesh Mesh::build_cube(int M) {
  if (M < 1) {
    throw std::invalid_argument("cube mesh needs M >= 1");
  }
  if (M > max_supported_subdivisions()) {
    throw std::invalid_argument("M = " + std::to_string(M) +
                                " overflows the 32-bit DOF index; maximum is " +
                                std::to_string(max_supported_subdivisions()));
  }

  Mesh mesh;
  mesh.M_ = M;
  const int n = M + 1;
  auto vertex_id = [n](int i, int j, int k) { return (i * n + j) * n + k; };

  mesh.vertices_.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        mesh.vertices_.emplace_back(static_cast<double>(i) / M, static_cast<double>(j) / M,
                                    static_cast<double>(k) / M);
      }
    }
  }

  // The six monotone lattice paths from a cell's lower corner to its upper
  // corner; odd permutations are reflected, so two vertices are swapped.
  constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  constexpr std::array<bool, 6> odd{false, true, true, false, false, true};

  mesh.tets_.reserve(6 * static_cast<std::size_t>(M) * M * M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      for (int k = 0; k < M; ++k) {
        for (std::size_t p = 0; p < perms.size(); ++p) {
          std::array<int, 3> idx{i, j, k};
          std::array<int, 4> tet{};
          tet[0] = vertex_id(idx[0], idx[1], idx[2]);
          for (int step = 0; step < 3; ++step) {
            ++idx[perms[p][step]];
            tet[step + 1] = vertex_id(idx[0], idx[1], idx[2]);
          }
          if (odd[p]) {
            std::swap(tet[2], tet[3]);
          }
          mesh.tets_.push_back(tet);
        }
      }
    }
  }

  const auto nv = static_cast<std::uint64_t>(mesh.vertices_.size());
  std::unordered_map<std::uint64_t, int> edge_ids;
  std::unordered_map<std::uint64_t, int> face_ids;
  edge_ids.reserve(mesh.tets_.size() * 2);
  face_ids.reserve(mesh.tets_.size() * 3);

  mesh.tet_edges_.resize(mesh.tets_.size());
  mesh.tet_faces_.resize(mesh.tets_.size());
  mesh.maps_.reserve(mesh.tets_.size());

  for (std::size_t t = 0; t < mesh.tets_.size(); ++t) {
    const auto& tet = mesh.tets_[t];
    for (std::size_t e = 0; e < kLocalEdges.size(); ++e) {
      int a = tet[kLocalEdges[e][0]];
      int b = tet[kLocalEdges[e][1]];
      if (a > b) {
        std::swap(a, b);
      }
      const std::uint64_t key = static_cast<std::uint64_t>(a) * nv + static_cast<std::uint64_t>(b);
      auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(mesh.edges_.size()));
      if (inserted) {
        mesh.edges_.push_back({a, b});
      }
      mesh.tet_edges_[t][e] = it->second;
    }
    for (std::size_t f = 0; f < kLocalFaces.size(); ++f) {
      std::array<int, 3> verts{tet[kLocalFaces[f][0]], tet[kLocalFaces[f][1]],
                               tet[kLocalFaces[f][2]]};
      std::sort(verts.begin(), verts.end());
      const std::uint64_t key =
          (static_cast<std::uint64_t>(verts[0]) * nv + static_cast<std::uint64_t>(verts[1])) * nv +
          static_cast<std::uint64_t>(verts[2]);
      auto [it, inserted] = face_ids.try_emplace(key, static_cast<int>(mesh.faces_.size()));
      if (inserted) {
        mesh.faces_.push_back(verts);
        mesh.face_tets_.push_back({static_cast<int>(t), -1});
      } else {
        auto& owners = mesh.face_tets_[it->second];
        if (owners[1] != -1) {
          throw std::logic_error("non-manifold face in cube mesh");
        }
        owners[1] = static_cast<int>(t);
      }
      mesh.tet_faces_[t][f] = it->second;
    }
    mesh.maps_.push_back(ElementMap::from_vertices(mesh.vertices_[tet[0]], mesh.vertices_[tet[1]],
                                                   mesh.vertices_[tet[2]], mesh.vertices_[tet[3]]));
  }

  for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
    const auto& owners = mesh.face_tets_[f];
    if (owners[1] != -1) {
      continue;
    }
    BoundaryFace bf;
    bf.face = static_cast<int>(f);
    bf.tet = owners[0];
    const auto& local = mesh.tet_faces_[bf.tet];
    bf.local_face = static_cast<int>(std::find(local.begin(), local.end(), bf.face) - local.begin());
    bf.normal = classify_boundary_face(mesh.vertices_, mesh.faces_[f]);
    mesh.boundary_faces_.push_back(bf);
  }
  return mesh;
}

}  // namespace maxwell
