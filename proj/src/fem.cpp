#include "saddle/fem.hpp"

#include "saddle/errors.hpp"

#include <cmath>
#include <cstring>

namespace saddle {

TriangleQuadrature triangle_quadrature_d5() {
    const double s15 = std::sqrt(15.0);
    const double a = (6.0 + s15) / 21.0;
    const double b = (6.0 - s15) / 21.0;
    const double wa = (155.0 + s15) / 2400.0;
    const double wb = (155.0 - s15) / 2400.0;
    TriangleQuadrature q;
    q.xi = {1.0 / 3.0, a, 1.0 - 2.0 * a, a, b, 1.0 - 2.0 * b, b};
    q.eta = {1.0 / 3.0, a, a, 1.0 - 2.0 * a, b, b, 1.0 - 2.0 * b};
    q.weight = {9.0 / 80.0, wa, wa, wa, wb, wb, wb};
    return q;
}

std::array<double, 6> p2_values(double xi, double eta) {
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
            4.0 * l0 * l1, 4.0 * l1 * l2, 4.0 * l2 * l0};
}

std::array<std::array<double, 2>, 6> p2_gradients(double xi, double eta) {
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    // grad l0 = (-1,-1), grad l1 = (1,0), grad l2 = (0,1)
    return {{{-(4.0 * l0 - 1.0), -(4.0 * l0 - 1.0)},
             {4.0 * l1 - 1.0, 0.0},
             {0.0, 4.0 * l2 - 1.0},
             {4.0 * (l0 - l1), -4.0 * l1},
             {4.0 * l2, 4.0 * l1},
             {-4.0 * l2, 4.0 * (l0 - l2)}}};
}

std::array<double, 3> p1_values(double xi, double eta) {
    return {1.0 - xi - eta, xi, eta};
}

namespace {

// Maps a reference gradient to physical coordinates for the given shape.
// Lower: xi = (x-x0)/hx - (y-y0)/hy, eta = (y-y0)/hy.
// Upper: xi = (x-x0)/hx, eta = (y-y0)/hy - (x-x0)/hx.
std::array<double, 2> physical_gradient(int orientation, double hx, double hy,
                                        const std::array<double, 2>& g) {
    if (orientation == 0)
        return {g[0] / hx, (-g[0] + g[1]) / hy};
    return {(g[0] - g[1]) / hx, g[1] / hy};
}

ElementMatrices build_element_matrices(int orientation, double hx, double hy) {
    ElementMatrices e{};
    e.detj = hx * hy;
    const TriangleQuadrature q = triangle_quadrature_d5();

    for (int p = 0; p < TriangleQuadrature::npoints; ++p) {
        const double w = q.weight[p] * e.detj;
        const auto n = p2_values(q.xi[p], q.eta[p]);
        const auto gref = p2_gradients(q.xi[p], q.eta[p]);
        const auto l = p1_values(q.xi[p], q.eta[p]);

        std::array<std::array<double, 2>, 6> g;
        for (int i = 0; i < 6; ++i)
            g[i] = physical_gradient(orientation, hx, hy, gref[i]);

        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                e.mass[i][j] += w * n[i] * n[j];
                const double gij = g[i][0] * g[j][0] + g[i][1] * g[j][1];
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        const double strain = (a == b ? gij : 0.0) + g[i][b] * g[j][a];
                        e.visc[a][b][i][j] += w * strain;
                        e.graddiv[a][b][i][j] += w * g[i][a] * g[j][b];
                    }
                }
                for (int m = 0; m < 6; ++m) {
                    e.conv[0][m][i][j] += w * n[m] * n[i] * g[j][0];
                    e.conv[1][m][i][j] += w * n[m] * n[i] * g[j][1];
                }
            }
            for (int k = 0; k < 3; ++k) {
                for (int a = 0; a < 2; ++a) {
                    e.div_comp[a][k][i] -= w * l[k] * g[i][a];
                    e.curl_comp[a][k][i] += w * l[k] * g[i][a];
                }
            }
        }
        for (int k = 0; k < 3; ++k)
            for (int m = 0; m < 3; ++m)
                e.p1_mass[k][m] += w * l[k] * l[m];
    }

    // P1 gradients are constant; integrate the stiffness directly.
    const std::array<std::array<double, 2>, 3> lref = {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};
    std::array<std::array<double, 2>, 3> lg;
    for (int k = 0; k < 3; ++k)
        lg[k] = physical_gradient(orientation, hx, hy, lref[k]);
    const double area = 0.5 * e.detj;
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m)
            e.p1_stiff[k][m] = area * (lg[k][0] * lg[m][0] + lg[k][1] * lg[m][1]);

    return e;
}

} // namespace

TaylorHoodSpace make_taylor_hood(const StripMesh& mesh) {
    if (mesh.Nx < 4 || mesh.Ny < 4)
        throw ConfigError("make_taylor_hood: mesh has not been built");

    TaylorHoodSpace space;
    space.mesh = mesh;

    const index_t fx = 2 * mesh.Nx;     // fine lattice columns (periodic)
    const index_t fy = 2 * mesh.Ny + 1; // fine lattice rows
    space.n_scalar = fx * fy;
    space.map.n_ux = space.n_scalar;
    space.map.n_uy = space.n_scalar;
    space.map.n_p = mesh.nvertices();

    const auto fine_id = [fx](index_t i2, index_t j2) {
        const index_t iw = ((i2 % fx) + fx) % fx;
        return j2 * fx + iw;
    };

    space.p2_x.resize(static_cast<std::size_t>(space.n_scalar));
    space.p2_y.resize(static_cast<std::size_t>(space.n_scalar));
    for (index_t j2 = 0; j2 < fy; ++j2) {
        for (index_t i2 = 0; i2 < fx; ++i2) {
            const auto id = static_cast<std::size_t>(j2 * fx + i2);
            space.p2_x[id] = 0.5 * mesh.hx * static_cast<double>(i2);
            space.p2_y[id] = -0.5 + 0.5 * mesh.hy * static_cast<double>(j2);
        }
    }

    const index_t ntri = mesh.ntriangles();
    space.tri_p2.resize(static_cast<std::size_t>(ntri * 6));
    space.tri_p1.resize(static_cast<std::size_t>(ntri * 3));
    for (index_t t = 0; t < ntri; ++t) {
        const MeshTriangle& tri = mesh.triangles[static_cast<std::size_t>(t)];
        const index_t i2 = 2 * tri.cell_ix, j2 = 2 * tri.cell_iy;
        index_t* p2 = &space.tri_p2[static_cast<std::size_t>(t * 6)];
        if (tri.orientation == 0) {
            p2[0] = fine_id(i2, j2);
            p2[1] = fine_id(i2 + 2, j2);
            p2[2] = fine_id(i2 + 2, j2 + 2);
            p2[3] = fine_id(i2 + 1, j2);
            p2[4] = fine_id(i2 + 2, j2 + 1);
            p2[5] = fine_id(i2 + 1, j2 + 1);
        } else {
            p2[0] = fine_id(i2, j2);
            p2[1] = fine_id(i2 + 2, j2 + 2);
            p2[2] = fine_id(i2, j2 + 2);
            p2[3] = fine_id(i2 + 1, j2 + 1);
            p2[4] = fine_id(i2 + 1, j2 + 2);
            p2[5] = fine_id(i2, j2 + 1);
        }
        for (int k = 0; k < 3; ++k)
            space.tri_p1[static_cast<std::size_t>(t * 3 + k)] = tri.v[k];
    }

    space.wall_nodes.reserve(static_cast<std::size_t>(2 * fx));
    for (index_t i2 = 0; i2 < fx; ++i2)
        space.wall_nodes.push_back(fine_id(i2, 0));
    for (index_t i2 = 0; i2 < fx; ++i2)
        space.wall_nodes.push_back(fine_id(i2, fy - 1));

    space.elem[0] = build_element_matrices(0, mesh.hx, mesh.hy);
    space.elem[1] = build_element_matrices(1, mesh.hx, mesh.hy);
    return space;
}

DenseVector interpolate_velocity(const TaylorHoodSpace& space,
                                 const std::function<double(double, double)>& fx,
                                 const std::function<double(double, double)>& fy) {
    DenseVector u(static_cast<std::size_t>(space.map.n_u()), 0.0);
    const auto n = static_cast<std::size_t>(space.n_scalar);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = fx(space.p2_x[i], space.p2_y[i]);
        u[n + i] = fy(space.p2_x[i], space.p2_y[i]);
    }
    return u;
}

DenseVector interpolate_pressure(const TaylorHoodSpace& space,
                                 const std::function<double(double, double)>& f) {
    DenseVector p(static_cast<std::size_t>(space.map.n_p), 0.0);
    for (index_t v = 0; v < space.map.n_p; ++v)
        p[static_cast<std::size_t>(v)] =
            f(space.mesh.vertex_x[static_cast<std::size_t>(v)],
              space.mesh.vertex_y[static_cast<std::size_t>(v)]);
    return p;
}

std::vector<index_t> wall_uy_dofs(const TaylorHoodSpace& space) {
    std::vector<index_t> dofs;
    dofs.reserve(space.wall_nodes.size());
    for (index_t node : space.wall_nodes)
        dofs.push_back(space.map.uy_begin() + node);
    return dofs;
}

} // namespace saddle
