#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "maxwell/fe_basis.hpp"
#include "maxwell/quadrature.hpp"

namespace maxwell {
namespace {

std::vector<VertexRanks> all_rank_permutations() {
  std::vector<VertexRanks> out;
  VertexRanks r{0, 1, 2, 3};
  do {
    out.push_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

TEST(FeBasis, LocalSizes) {
  EXPECT_EQ(ReferenceBasis(1).size(), 12);
  EXPECT_EQ(ReferenceBasis(2).size(), 30);
  EXPECT_EQ(ReferenceBasis(3).size(), 60);
  const auto l3 = EntityLayout::for_order(3);
  EXPECT_EQ(l3.per_edge, 4);
  EXPECT_EQ(l3.per_face, 8);
  EXPECT_EQ(l3.per_interior, 4);
  EXPECT_THROW(EntityLayout::for_order(0), std::invalid_argument);
  EXPECT_THROW(EntityLayout::for_order(4), std::invalid_argument);
}

TEST(FeBasis, DualityForEveryOrientation) {
  for (int p = 1; p <= 3; ++p) {
    for (const auto& ranks : all_rank_permutations()) {
      const ReferenceBasis basis(p, ranks);
      const auto d = basis.duality_matrix();
      const double err = (d - Eigen::MatrixXd::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
      EXPECT_LE(err, 1e-12) << "p=" << p << " ranks " << ranks[0] << ranks[1] << ranks[2] << ranks[3];
    }
  }
}

TEST(FeBasis, ReproducesPolynomialsOfDegreeP) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist;
  for (int p = 1; p <= 3; ++p) {
    const ReferenceBasis basis(p, {2, 0, 3, 1});
    const MonomialSet mono(p);
    std::vector<double> c(3 * mono.size());
    for (auto& v : c) {
      v = dist(rng);
    }
    auto field = [&](const Vec3& x) {
      std::vector<double> m(mono.size());
      mono.evaluate(x, m);
      Vec3 out = Vec3::Zero();
      for (int d = 0; d < 3; ++d) {
        for (int s = 0; s < mono.size(); ++s) {
          out[d] += c[d * mono.size() + s] * m[s];
        }
      }
      return out;
    };
    const Eigen::VectorXd dofs = basis.apply(field, 2 * p + 2);
    std::vector<Vec3> vals(basis.size()), curls(basis.size());
    for (const Vec3 x : {Vec3(0.1, 0.2, 0.3), Vec3(0.6, 0.1, 0.05), Vec3(0.0, 0.0, 1.0)}) {
      basis.evaluate(x, vals, curls);
      Vec3 sum = Vec3::Zero();
      for (int j = 0; j < basis.size(); ++j) {
        sum += dofs[j] * vals[j];
      }
      EXPECT_LE((sum - field(x)).norm(), 1e-11) << p;
    }
  }
}

TEST(FeBasis, CurlMatchesFiniteDifference) {
  const ReferenceBasis basis(3, {1, 3, 0, 2});
  const Vec3 x(0.21, 0.17, 0.33);
  const double h = 1e-6;
  std::vector<Vec3> v0(60), c0(60), vp(60), cp(60), vm(60), cm(60);
  basis.evaluate(x, v0, c0);
  std::vector<Eigen::Matrix3d> jac(60);
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    basis.evaluate(x + e, vp, cp);
    basis.evaluate(x - e, vm, cm);
    for (int j = 0; j < 60; ++j) {
      jac[j].col(k) = (vp[j] - vm[j]) / (2 * h);
    }
  }
  for (int j = 0; j < 60; ++j) {
    const auto& J = jac[j];
    const Vec3 curl(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
    EXPECT_LE((curl - c0[j]).norm(), 1e-5 * (1.0 + c0[j].norm())) << j;
  }
}

TEST(FeBasis, DofCountFormula) {
  const int expected[4][3] = {{38, 111, 244}, {196, 654, 1544}, {558, 1971, 4788}, {1208, 4404, 10864}};
  for (int M = 1; M <= 4; ++M) {
    const auto mesh = Mesh::build_cube(M);
    for (int p = 1; p <= 3; ++p) {
      EXPECT_EQ(dof_count(M, p), expected[M - 1][p - 1]);
      const auto layout = EntityLayout::for_order(p);
      const auto by_entity = static_cast<std::int64_t>(mesh.num_edges()) * layout.per_edge +
                             static_cast<std::int64_t>(mesh.num_faces()) * layout.per_face +
                             static_cast<std::int64_t>(mesh.num_tets()) * layout.per_interior;
      EXPECT_EQ(dof_count(M, p), by_entity);
      EXPECT_EQ(DofMap(mesh, p).total_dofs(), by_entity);
    }
  }
  EXPECT_EQ(dof_count(8, 1), 8368);
}

TEST(FeBasis, DofMapCoversEveryIndex) {
  const auto mesh = Mesh::build_cube(2);
  const DofMap map(mesh, 3);
  std::vector<int> hits(map.total_dofs(), 0);
  for (std::size_t t = 0; t < mesh.num_tets(); ++t) {
    for (const int d : map.element_dofs(static_cast<int>(t))) {
      ASSERT_GE(d, 0);
      ASSERT_LT(d, map.total_dofs());
      ++hits[d];
    }
  }
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h > 0; }));
  EXPECT_EQ(map.edge_dof(3, 1), 3 * 4 + 1);
  EXPECT_EQ(map.face_dof(0, 0), static_cast<int>(mesh.num_edges()) * 4);
}

TEST(FeBasis, TangentialContinuityAcrossInteriorFaces) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  const auto mesh = Mesh::build_cube(2);
  for (int p = 1; p <= 3; ++p) {
    const FeSpace space(mesh, p);
    std::vector<Complex> u(space.total_dofs());
    for (auto& v : u) {
      v = {dist(rng), dist(rng)};
    }
    auto local = [&](int t) {
      std::vector<Complex> out;
      for (const int d : space.dofs().element_dofs(t)) {
        out.push_back(u[d]);
      }
      return out;
    };
    const auto rule = tri_rule(3);
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
      const auto& ft = mesh.face_tets(static_cast<int>(f));
      if (ft[1] < 0) {
        continue;
      }
      const auto& fv = mesh.faces()[f];
      const Vec3 a = mesh.vertices()[fv[0]];
      const Vec3 t1 = mesh.vertices()[fv[1]] - a;
      const Vec3 t2 = mesh.vertices()[fv[2]] - a;
      const Vec3 n = t1.cross(t2).normalized();
      const auto l0 = local(ft[0]);
      const auto l1 = local(ft[1]);
      for (const auto& q : rule.points) {
        const Vec3 x = a + q[0] * t1 + q[1] * t2;
        const auto s0 = push_forward(space.basis(ft[0]), l0, mesh.element_maps()[ft[0]], x);
        const auto s1 = push_forward(space.basis(ft[1]), l1, mesh.element_maps()[ft[1]], x);
        const CVec3 nc = n.cast<Complex>();
        const CVec3 jump = cross(nc, s0.value - s1.value);
        worst = std::max(worst, jump.norm());
        scale = std::max(scale, s0.value.norm());
        // Normal curl is the surface curl of the tangential trace.
        worst = std::max(worst, std::abs(nc.dot(s0.curl - s1.curl)) * mesh.h0());
      }
    }
    EXPECT_LE(worst, 1e-10 * scale) << "p=" << p;
  }
}

TEST(FeBasis, PushForwardIdentityMap) {
  const auto map = ElementMap::from_vertices(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1));
  const ReferenceBasis basis(2);
  std::vector<Complex> local(basis.size(), 0.0);
  local[4] = {1.0, -2.0};
  const Vec3 x(0.25, 0.25, 0.25);
  std::vector<Vec3> vals(basis.size()), curls(basis.size());
  basis.evaluate(x, vals, curls);
  const auto s = push_forward(basis, local, map, x);
  EXPECT_LE((s.value - local[4] * vals[4].cast<Complex>()).norm(), 1e-14);
  EXPECT_LE((s.curl - local[4] * curls[4].cast<Complex>()).norm(), 1e-14);
}

TEST(FeBasis, PushForwardOfInterpolatedConstantAndLinearFields) {
  // Field E(x) = c + w x x, curl E = 2 w. On the reference element the pulled
  // back field is B^T E(F(xhat)).
  const auto map = ElementMap::from_vertices(Vec3(0.5, 0.0, 0.25), Vec3(1.0, 0.1, 0.25),
                                             Vec3(0.5, 0.5, 0.0), Vec3(0.6, 0.2, 0.75));
  ASSERT_GT(map.det, 0.0);
  const Vec3 c(1.0, -2.0, 0.5);
  const Vec3 w(0.3, 0.7, -1.1);
  auto E = [&](const Vec3& x) -> Vec3 { return c + w.cross(x); };
  const ReferenceBasis basis(1, {3, 1, 0, 2});
  const Eigen::VectorXd dofs = basis.apply([&](const Vec3& xh) -> Vec3 {
    return map.B.transpose() * E(map.to_physical(xh));
  }, 4);
  std::vector<Complex> local(dofs.data(), dofs.data() + dofs.size());
  const Vec3 x = map.to_physical(Vec3(0.2, 0.3, 0.1));
  const auto s = push_forward(basis, local, map, x);
  EXPECT_LE((s.value - E(x).cast<Complex>()).norm(), 1e-12);
  EXPECT_LE((s.curl - (2.0 * w).cast<Complex>()).norm(), 1e-12);
}

}  // namespace
}  // namespace maxwell
