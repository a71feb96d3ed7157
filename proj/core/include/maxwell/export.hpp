#pragma once

#include <iosfwd>
#include <span>

#include "maxwell/fe_basis.hpp"

namespace maxwell {

/// Legacy ASCII VTK unstructured grid (cell type 10).
void write_mesh_vtk(std::ostream& os, const Mesh& mesh);

/// Mesh plus per-element cell data sampled at element centroids: |E_h| and
/// the real and imaginary parts of E_h.
void write_field_vtk(std::ostream& os, const FeSpace& space, std::span<const Complex> u);

}  // namespace maxwell
