#include "maxwell/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace maxwell {

namespace {

struct FaceTables {
  std::vector<Vec3> ref_points;  // reference-element coordinates
  BasisTable table;
  Vec3 t1;
  Vec3 t2;
};

// Local element contributions, row-major n x n.
struct ElementBlock {
  std::vector<double> stiffness;
  std::vector<double> mass;
  std::vector<Complex> load;
};

struct FaceBlock {
  std::vector<double> mass;
  std::vector<Complex> load;
};

void scatter(RealSparseMatrix& m, std::span<const int> dofs, std::span<const double> local) {
  const auto n = dofs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto pos = m.find(dofs[i], dofs[j]);
      m.values[pos] += local[i * n + j];
    }
  }
}

}  // namespace

RealSparseMatrix build_sparsity(const FeSpace& space) {
  const auto& dofs = space.dofs();
  const int n = dofs.total_dofs();
  std::vector<std::vector<int>> rows(n);
  const int nt = static_cast<int>(space.mesh().num_tets());
  for (int t = 0; t < nt; ++t) {
    const auto local = dofs.element_dofs(t);
    for (const int r : local) {
      rows[r].insert(rows[r].end(), local.begin(), local.end());
    }
  }
  RealSparseMatrix m;
  m.rows = n;
  m.cols = n;
  m.row_ptr.assign(n + 1, 0);
  for (int r = 0; r < n; ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    m.row_ptr[r + 1] = m.row_ptr[r] + static_cast<int>(row.size());
  }
  m.col_idx.reserve(m.row_ptr[n]);
  for (auto& row : rows) {
    m.col_idx.insert(m.col_idx.end(), row.begin(), row.end());
    std::vector<int>().swap(row);
  }
  m.values.assign(m.col_idx.size(), 0.0);
  return m;
}

AssembledSystem assemble(const FeSpace& space, const ExactSolution& exact,
                         const AssemblyOptions& options) {
  const auto& mesh = space.mesh();
  const auto& dofs = space.dofs();
  const auto maps = mesh.element_maps();
  const int n = dofs.local_size();
  const auto params = exact.params();
  const double kappa = params.kappa;

  AssembledSystem sys;
  sys.params = params;
  sys.S = build_sparsity(space);
  sys.Mv = sys.S;
  sys.B = sys.S;
  sys.b.assign(dofs.total_dofs(), Complex(0.0));

  const auto vol_rule = tet_rule(options.quadrature.assembly_degree);
  const auto load_rule = tet_rule(options.quadrature.load_degree);
  const auto face_rule = tri_rule(options.quadrature.assembly_degree);
  const auto face_load_rule = tri_rule(options.quadrature.load_degree);

  std::vector<BasisTable> vol_tables;
  std::vector<BasisTable> load_tables;
  // [variant * 4 + local_face]
  std::vector<FaceTables> face_tables;
  std::vector<FaceTables> face_load_tables;
  for (const auto& basis : space.variants()) {
    vol_tables.push_back(basis.tabulate(vol_rule.points));
    load_tables.push_back(basis.tabulate(load_rule.points));
    for (int f = 0; f < 4; ++f) {
      for (auto* target : {&face_tables, &face_load_tables}) {
        const auto& rule = target == &face_tables ? face_rule : face_load_rule;
        FaceTables ft;
        ft.ref_points = map_to_reference_face(f, rule.points, &ft.t1, &ft.t2);
        ft.table = basis.tabulate(ft.ref_points);
        target->push_back(std::move(ft));
      }
    }
  }

  const int threads = options.threads;
  const int nt = static_cast<int>(mesh.num_tets());
  const std::size_t block_bytes = sizeof(double) * 2 * n * n + sizeof(Complex) * n;
  const int chunk = static_cast<int>(std::max<std::size_t>(64, (std::size_t{32} << 20) / block_bytes));

  std::vector<ElementBlock> blocks;
  for (int start = 0; start < nt; start += chunk) {
    const int count = std::min(chunk, nt - start);
    blocks.resize(count);
    detail::parallel_for(count, threads, [&](int begin, int end) {
      std::vector<Vec3> phi(n), curl(n);
      for (int e = begin; e < end; ++e) {
        const int t = start + e;
        const auto& map = maps[t];
        const double jac = std::abs(map.det);
        const Mat3 cov = map.B_inv.transpose();
        const Mat3 rot = map.B / map.det;
        auto& blk = blocks[e];
        blk.stiffness.assign(static_cast<std::size_t>(n) * n, 0.0);
        blk.mass.assign(static_cast<std::size_t>(n) * n, 0.0);
        blk.load.assign(n, Complex(0.0));

        const auto& vt = vol_tables[space.variant(t)];
        for (int q = 0; q < vt.num_points; ++q) {
          const double w = vol_rule.weights[q] * jac;
          for (int i = 0; i < n; ++i) {
            phi[i] = cov * vt.value(q, i);
            curl[i] = rot * vt.curl(q, i);
          }
          for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
              blk.stiffness[i * n + j] += w * curl[i].dot(curl[j]);
              blk.mass[i * n + j] += w * phi[i].dot(phi[j]);
            }
          }
        }
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < i; ++j) {
            blk.stiffness[i * n + j] = blk.stiffness[j * n + i];
            blk.mass[i * n + j] = blk.mass[j * n + i];
          }
        }

        const auto& lt = load_tables[space.variant(t)];
        for (int q = 0; q < lt.num_points; ++q) {
          const double w = load_rule.weights[q] * jac;
          const CVec3 f = exact.eval_f(map.to_physical(load_rule.points[q]));
          for (int i = 0; i < n; ++i) {
            const Vec3 v = cov * lt.value(q, i);
            blk.load[i] += w * (f[0] * v[0] + f[1] * v[1] + f[2] * v[2]);
          }
        }
      }
    });
    for (int e = 0; e < count; ++e) {
      const int t = start + e;
      const auto local = dofs.element_dofs(t);
      scatter(sys.S, local, blocks[e].stiffness);
      scatter(sys.Mv, local, blocks[e].mass);
      for (int i = 0; i < n; ++i) {
        sys.b[local[i]] += blocks[e].load[i];
      }
    }
  }
  std::vector<ElementBlock>().swap(blocks);

  const auto bfaces = mesh.boundary_faces();
  const int nb = static_cast<int>(bfaces.size());
  std::vector<FaceBlock> fblocks(nb);
  detail::parallel_for(nb, threads, [&](int begin, int end) {
    std::vector<Vec3> tan(n);
    for (int k = begin; k < end; ++k) {
      const auto& bf = bfaces[k];
      const auto& map = maps[bf.tet];
      const Mat3 cov = map.B_inv.transpose();
      const Vec3& nu = bf.normal;
      const int slot = space.variant(bf.tet) * 4 + bf.local_face;
      auto& blk = fblocks[k];
      blk.mass.assign(static_cast<std::size_t>(n) * n, 0.0);
      blk.load.assign(n, Complex(0.0));

      const auto& ft = face_tables[slot];
      const double area = (map.B * ft.t1).cross(map.B * ft.t2).norm();
      for (int q = 0; q < ft.table.num_points; ++q) {
        const double w = face_rule.weights[q] * area;
        for (int i = 0; i < n; ++i) {
          const Vec3 v = cov * ft.table.value(q, i);
          tan[i] = v - v.dot(nu) * nu;
        }
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            blk.mass[i * n + j] += w * tan[i].dot(tan[j]);
          }
        }
      }

      const auto& fl = face_load_tables[slot];
      for (int q = 0; q < fl.table.num_points; ++q) {
        const double w = face_load_rule.weights[q] * area;
        const CVec3 g = exact.eval_g(map.to_physical(fl.ref_points[q]), nu);
        for (int i = 0; i < n; ++i) {
          const Vec3 v = cov * fl.table.value(q, i);
          const Vec3 vt = v - v.dot(nu) * nu;
          blk.load[i] += w * (g[0] * vt[0] + g[1] * vt[1] + g[2] * vt[2]);
        }
      }
    }
  });
  for (int k = 0; k < nb; ++k) {
    const auto local = dofs.element_dofs(bfaces[k].tet);
    scatter(sys.B, local, fblocks[k].mass);
    for (int i = 0; i < n; ++i) {
      sys.b[local[i]] += fblocks[k].load[i];
    }
  }

  sys.A = sys.S.with_pattern<Complex>();
  const Complex boundary_factor = -kI * kappa * params.lambda;
  for (std::size_t k = 0; k < sys.A.values.size(); ++k) {
    sys.A.values[k] = Complex(sys.S.values[k] - kappa * kappa * sys.Mv.values[k], 0.0) +
                      boundary_factor * sys.B.values[k];
  }
  return sys;
}

}  // namespace maxwell
