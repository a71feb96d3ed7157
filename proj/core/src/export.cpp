#include "maxwell/export.hpp"

#include <ostream>

#include "maxwell/analysis.hpp"

namespace maxwell {

namespace {

void write_grid(std::ostream& os, const Mesh& mesh) {
  os << "# vtk DataFile Version 3.0\n"
     << "Kuhn cube mesh M=" << mesh.subdivisions() << "\n"
     << "ASCII\n"
     << "DATASET UNSTRUCTURED_GRID\n";
  os.precision(17);
  os << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& v : mesh.vertices()) {
    os << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  os << "CELLS " << mesh.num_tets() << ' ' << 5 * mesh.num_tets() << '\n';
  for (const auto& t : mesh.tets()) {
    os << "4 " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
  }
  os << "CELL_TYPES " << mesh.num_tets() << '\n';
  for (std::size_t t = 0; t < mesh.num_tets(); ++t) {
    os << "10\n";
  }
}

}  // namespace

void write_mesh_vtk(std::ostream& os, const Mesh& mesh) { write_grid(os, mesh); }

void write_field_vtk(std::ostream& os, const FeSpace& space, std::span<const Complex> u) {
  const auto& mesh = space.mesh();
  write_grid(os, mesh);
  const auto maps = mesh.element_maps();
  std::vector<CVec3> centroid_values(mesh.num_tets());
  for (int t = 0; t < static_cast<int>(mesh.num_tets()); ++t) {
    const auto dofs = space.dofs().element_dofs(t);
    std::vector<Complex> local(dofs.size());
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      local[i] = u[dofs[i]];
    }
    const Vec3 x = maps[t].to_physical(Vec3(0.25, 0.25, 0.25));
    centroid_values[t] = push_forward(space.basis(t), local, maps[t], x).value;
  }
  os << "CELL_DATA " << mesh.num_tets() << '\n';
  os << "SCALARS abs_E double 1\nLOOKUP_TABLE default\n";
  for (const auto& v : centroid_values) {
    os << v.norm() << '\n';
  }
  os << "VECTORS re_E double\n";
  for (const auto& v : centroid_values) {
    os << v[0].real() << ' ' << v[1].real() << ' ' << v[2].real() << '\n';
  }
  os << "VECTORS im_E double\n";
  for (const auto& v : centroid_values) {
    os << v[0].imag() << ' ' << v[1].imag() << ' ' << v[2].imag() << '\n';
  }
}

}  // namespace maxwell
