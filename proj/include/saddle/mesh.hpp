/// @file mesh.hpp
/// @brief Structured triangulated periodic strip [0,1] x [-1/2,1/2].

#ifndef SADDLE_MESH_HPP
#define SADDLE_MESH_HPP

#include "saddle/types.hpp"

#include <vector>

namespace saddle {

/// One triangle: vertex ids plus which of the two congruent shapes it is.
/// Lower (orientation 0) is the cell's (v00, v10, v11) half, upper
/// (orientation 1) the (v00, v11, v01) half; both are counterclockwise
/// and share the constant Jacobian determinant hx*hy.
struct MeshTriangle {
    index_t v[3];
    int orientation; // 0 = lower, 1 = upper
    index_t cell_ix, cell_iy;
};

/// Uniform triangulation of the periodic strip. x in [0,1] wraps (the
/// column i = Nx is identified with i = 0); walls at y = +-1/2.
struct StripMesh {
    index_t Nx = 0, Ny = 0;
    double hx = 0.0, hy = 0.0;
    double h = 0.0; // max(hx, hy)
    bool periodic_x = true;

    std::vector<double> vertex_x, vertex_y; // per vertex id
    std::vector<MeshTriangle> triangles;

    index_t nvertices() const { return Nx * (Ny + 1); }
    index_t ntriangles() const { return static_cast<index_t>(triangles.size()); }
    /// Horizontal + vertical + diagonal edges of the periodic strip.
    index_t nedges() const { return Nx * (Ny + 1) + 2 * Nx * Ny; }

    /// Vertex id for lattice position (i, j), i wrapped mod Nx.
    index_t vertex_id(index_t i, index_t j) const {
        const index_t iw = ((i % Nx) + Nx) % Nx;
        return j * Nx + iw;
    }
};

/// Builds the strip mesh. Nx must be even (the perturbation wavenumbers
/// divide evenly) and both counts at least 4.
StripMesh build_mesh(index_t Nx, index_t Ny);

} // namespace saddle

#endif // SADDLE_MESH_HPP
