#include "saddle/mesh.hpp"

#include "saddle/errors.hpp"
#include "support/quadrature_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace saddle;

TEST_CASE("build_mesh counts for the smallest strip") {
    const StripMesh mesh = build_mesh(4, 4);
    CHECK(mesh.ntriangles() == 32);
    CHECK(mesh.nvertices() == 4 * 5);
    CHECK(mesh.periodic_x);
    CHECK(mesh.hx == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mesh.hy == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("build_mesh counts for a non-square strip") {
    const StripMesh mesh = build_mesh(8, 4);
    CHECK(mesh.ntriangles() == 64);
    CHECK(mesh.nvertices() == 8 * 5);
    CHECK(mesh.h == doctest::Approx(0.25).epsilon(1e-15)); // max of 1/8, 1/4
}

TEST_CASE("Euler characteristic of the periodic strip is zero") {
    for (index_t nx : {4, 8, 16}) {
        const StripMesh mesh = build_mesh(nx, 6);
        const index_t V = mesh.nvertices();
        const index_t E = mesh.nedges();
        const index_t F = mesh.ntriangles();
        CHECK(V - E + F == 0);
    }
}

TEST_CASE("all triangles are congruent, counterclockwise, of area hx*hy/2") {
    const StripMesh mesh = build_mesh(8, 6);
    const double expected = (1.0 / 8.0) * (1.0 / 6.0) / 2.0;
    for (index_t t = 0; t < mesh.ntriangles(); ++t) {
        double x0, y0, x1, y1, x2, y2;
        testsupport::triangle_corners(mesh, t, x0, y0, x1, y1, x2, y2);
        const double twice_area = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
        CHECK(twice_area > 0.0);
        CHECK(0.5 * twice_area == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("triangle corner coordinates match the stored vertex table away from the seam") {
    const StripMesh mesh = build_mesh(8, 4);
    for (index_t t = 0; t < mesh.ntriangles(); ++t) {
        const MeshTriangle& tri = mesh.triangles[static_cast<std::size_t>(t)];
        if (tri.cell_ix == mesh.Nx - 1)
            continue; // corner x wraps to 0 across the seam
        double cx[3], cy[3];
        testsupport::triangle_corners(mesh, t, cx[0], cy[0], cx[1], cy[1], cx[2], cy[2]);
        for (int k = 0; k < 3; ++k) {
            CHECK(mesh.vertex_x[static_cast<std::size_t>(tri.v[k])] ==
                  doctest::Approx(cx[k]).epsilon(1e-15));
            CHECK(mesh.vertex_y[static_cast<std::size_t>(tri.v[k])] ==
                  doctest::Approx(cy[k]).epsilon(1e-15));
        }
    }
}

TEST_CASE("vertex ids wrap periodically in x") {
    const StripMesh mesh = build_mesh(6, 4);
    CHECK(mesh.vertex_id(6, 2) == mesh.vertex_id(0, 2));
    CHECK(mesh.vertex_id(7, 0) == mesh.vertex_id(1, 0));
    CHECK(mesh.vertex_id(-1, 1) == mesh.vertex_id(5, 1));
}

TEST_CASE("every vertex is used and ids are in range") {
    const StripMesh mesh = build_mesh(4, 4);
    std::set<index_t> seen;
    for (const MeshTriangle& tri : mesh.triangles)
        for (index_t v : tri.v) {
            CHECK(v >= 0);
            CHECK(v < mesh.nvertices());
            seen.insert(v);
        }
    CHECK(static_cast<index_t>(seen.size()) == mesh.nvertices());
}

TEST_CASE("build_mesh rejects degenerate cell counts") {
    CHECK_THROWS_AS(build_mesh(2, 4), ConfigError);
    CHECK_THROWS_AS(build_mesh(4, 3), ConfigError);
    CHECK_THROWS_AS(build_mesh(5, 4), ConfigError); // odd Nx
    CHECK_THROWS_AS(build_mesh(0, 0), ConfigError);
}
