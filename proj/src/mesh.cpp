#include "saddle/mesh.hpp"

#include "saddle/errors.hpp"

#include <string>

namespace saddle {

StripMesh build_mesh(index_t Nx, index_t Ny) {
    if (Nx < 4 || Ny < 4)
        throw ConfigError("build_mesh: need Nx >= 4 and Ny >= 4, got Nx=" +
                          std::to_string(Nx) + " Ny=" + std::to_string(Ny));
    if (Nx % 2 != 0)
        throw ConfigError("build_mesh: Nx must be even, got " + std::to_string(Nx));

    StripMesh mesh;
    mesh.Nx = Nx;
    mesh.Ny = Ny;
    mesh.hx = 1.0 / static_cast<double>(Nx);
    mesh.hy = 1.0 / static_cast<double>(Ny);
    mesh.h = mesh.hx > mesh.hy ? mesh.hx : mesh.hy;

    mesh.vertex_x.resize(static_cast<std::size_t>(Nx * (Ny + 1)));
    mesh.vertex_y.resize(static_cast<std::size_t>(Nx * (Ny + 1)));
    for (index_t j = 0; j <= Ny; ++j) {
        for (index_t i = 0; i < Nx; ++i) {
            const auto id = static_cast<std::size_t>(j * Nx + i);
            mesh.vertex_x[id] = static_cast<double>(i) * mesh.hx;
            mesh.vertex_y[id] = -0.5 + static_cast<double>(j) * mesh.hy;
        }
    }

    mesh.triangles.reserve(static_cast<std::size_t>(2 * Nx * Ny));
    for (index_t j = 0; j < Ny; ++j) {
        for (index_t i = 0; i < Nx; ++i) {
            const index_t v00 = mesh.vertex_id(i, j);
            const index_t v10 = mesh.vertex_id(i + 1, j);
            const index_t v01 = mesh.vertex_id(i, j + 1);
            const index_t v11 = mesh.vertex_id(i + 1, j + 1);
            mesh.triangles.push_back({{v00, v10, v11}, 0, i, j});
            mesh.triangles.push_back({{v00, v11, v01}, 1, i, j});
        }
    }
    return mesh;
}

} // namespace saddle
