#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "maxwell/mesh.hpp"

namespace maxwell {
namespace {

TEST(Mesh, EntityCounts) {
  for (int M : {1, 2, 3, 5}) {
    const auto mesh = Mesh::build_cube(M);
    const std::size_t n = M;
    EXPECT_EQ(mesh.num_vertices(), (n + 1) * (n + 1) * (n + 1));
    EXPECT_EQ(mesh.num_tets(), 6 * n * n * n);
    // Euler: V - E + F - T = 1 for a contractible complex.
    const auto euler = static_cast<long>(mesh.num_vertices()) - static_cast<long>(mesh.num_edges()) +
                       static_cast<long>(mesh.num_faces()) - static_cast<long>(mesh.num_tets());
    EXPECT_EQ(euler, 1);
    EXPECT_EQ(mesh.boundary_faces().size(), 12 * n * n);
  }
  const auto one = Mesh::build_cube(1);
  EXPECT_EQ(one.num_edges(), 19u);
  EXPECT_EQ(one.num_faces(), 18u);
}

TEST(Mesh, VolumesArePositiveAndSumToOne) {
  const auto mesh = Mesh::build_cube(4);
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.num_tets(); ++t) {
    const double v = mesh.signed_volume(static_cast<int>(t));
    EXPECT_NEAR(v, 1.0 / (6.0 * 64.0), 1e-15);
    total += v;
    EXPECT_NEAR(mesh.element_maps()[t].det, 6.0 * v, 1e-15);
  }
  EXPECT_NEAR(total, 1.0, 1e-13);
}

TEST(Mesh, MeshSize) {
  const auto mesh = Mesh::build_cube(3);
  EXPECT_DOUBLE_EQ(mesh.h(), std::sqrt(3.0) / 3.0);
  EXPECT_DOUBLE_EQ(mesh.h0(), 1.0 / 3.0);
}

TEST(Mesh, ConformityEveryInteriorFaceSharedByTwo) {
  const auto mesh = Mesh::build_cube(3);
  std::map<std::array<int, 3>, int> count;
  for (const auto& tet : mesh.tets()) {
    for (const auto& lf : kLocalFaces) {
      std::array<int, 3> f{tet[lf[0]], tet[lf[1]], tet[lf[2]]};
      std::sort(f.begin(), f.end());
      ++count[f];
    }
  }
  std::size_t boundary = 0;
  for (const auto& [face, c] : count) {
    ASSERT_LE(c, 2);
    if (c == 1) {
      ++boundary;
    }
  }
  EXPECT_EQ(count.size(), mesh.num_faces());
  EXPECT_EQ(boundary, mesh.boundary_faces().size());
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const auto& ft = mesh.face_tets(static_cast<int>(f));
    EXPECT_GE(ft[0], 0);
    EXPECT_EQ(ft[1] < 0, count[mesh.faces()[f]] == 1);
  }
}

TEST(Mesh, LocalEntityTablesMatchGlobalEntities) {
  const auto mesh = Mesh::build_cube(2);
  for (std::size_t t = 0; t < mesh.num_tets(); ++t) {
    const auto& tet = mesh.tets()[t];
    for (int e = 0; e < 6; ++e) {
      auto ge = mesh.edges()[mesh.tet_edges(static_cast<int>(t))[e]];
      std::array<int, 2> le{tet[kLocalEdges[e][0]], tet[kLocalEdges[e][1]]};
      std::sort(le.begin(), le.end());
      EXPECT_EQ(ge, le);
    }
    for (int f = 0; f < 4; ++f) {
      auto gf = mesh.faces()[mesh.tet_faces(static_cast<int>(t))[f]];
      std::array<int, 3> lf{tet[kLocalFaces[f][0]], tet[kLocalFaces[f][1]], tet[kLocalFaces[f][2]]};
      std::sort(lf.begin(), lf.end());
      EXPECT_EQ(gf, lf);
    }
  }
}

TEST(Mesh, BoundaryNormalsPointOutward) {
  const auto mesh = Mesh::build_cube(2);
  std::map<std::pair<int, int>, int> per_side;
  for (const auto& bf : mesh.boundary_faces()) {
    const auto& tet = mesh.tets()[bf.tet];
    const Vec3 opposite = mesh.vertices()[tet[bf.local_face]];
    const Vec3 on_face = mesh.vertices()[mesh.faces()[bf.face][0]];
    EXPECT_NEAR(bf.normal.norm(), 1.0, 1e-15);
    EXPECT_GT(bf.normal.dot(on_face - opposite), 0.0);
    int axis = 0;
    bf.normal.cwiseAbs().maxCoeff(&axis);
    ++per_side[{axis, bf.normal[axis] > 0 ? 1 : 0}];
  }
  EXPECT_EQ(per_side.size(), 6u);
  for (const auto& [side, c] : per_side) {
    EXPECT_EQ(c, 8);
  }
}

TEST(Mesh, InteriorFaceIsNotClassified) {
  const auto mesh = Mesh::build_cube(2);
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    if (mesh.face_tets(static_cast<int>(f))[1] >= 0) {
      EXPECT_THROW(classify_boundary_face(mesh.vertices(), mesh.faces()[f]), std::invalid_argument);
      return;
    }
  }
  FAIL() << "no interior face";
}

TEST(Mesh, ElementMapRoundTrip) {
  const auto mesh = Mesh::build_cube(3);
  const Vec3 xhat(0.2, 0.3, 0.1);
  for (const auto& map : mesh.element_maps()) {
    EXPECT_LE((map.to_reference(map.to_physical(xhat)) - xhat).norm(), 1e-14);
  }
}

TEST(Mesh, RejectsInvalidSubdivision) {
  EXPECT_THROW(Mesh::build_cube(0), std::invalid_argument);
  EXPECT_THROW(Mesh::build_cube(max_supported_subdivisions() + 1), std::invalid_argument);
}

}  // namespace
}  // namespace maxwell
