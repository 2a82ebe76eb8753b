/// @file fem.hpp
/// @brief Taylor-Hood P2-P1 space on the strip mesh: dof maps, quadrature,
///        and per-orientation element matrices.

#ifndef SADDLE_FEM_HPP
#define SADDLE_FEM_HPP

#include "saddle/block_index_map.hpp"
#include "saddle/mesh.hpp"
#include "saddle/types.hpp"

#include <array>
#include <functional>
#include <vector>

namespace saddle {

/// Degree-5 rule on the reference triangle (0,0)-(1,0)-(0,1).
/// Weights sum to 1/2 (the reference area); physical integrals multiply
/// by det J, which is hx*hy for both triangle shapes.
struct TriangleQuadrature {
    static constexpr int npoints = 7;
    std::array<double, npoints> xi, eta, weight;
};

TriangleQuadrature triangle_quadrature_d5();

/// Values of the six P2 basis functions at a reference point.
std::array<double, 6> p2_values(double xi, double eta);
/// Reference gradients (d/dxi, d/deta) of the six P2 basis functions.
std::array<std::array<double, 2>, 6> p2_gradients(double xi, double eta);
/// Values of the three P1 basis functions at a reference point.
std::array<double, 3> p1_values(double xi, double eta);

/// Element matrices for one triangle shape, integrated with the degree-5
/// rule (exact for every entry: the highest integrand degree is 5, in the
/// convection tensors). Scalar indices follow the local P2 numbering
/// 0,1,2 = vertices and 3,4,5 = edge midpoints of (0,1),(1,2),(2,0).
struct ElementMatrices {
    double detj = 0.0;

    std::array<std::array<double, 6>, 6> mass;         // int N_i N_j
    std::array<std::array<double, 3>, 3> p1_mass;      // int L_k L_m
    std::array<std::array<double, 3>, 3> p1_stiff;     // int grad L_k . grad L_m

    // visc[a][b][i][j] = int (delta_ab grad N_i . grad N_j + dN_i/dx_b dN_j/dx_a);
    // the viscosity nu multiplies at assembly.
    std::array<std::array<std::array<std::array<double, 6>, 6>, 2>, 2> visc;

    // graddiv[a][b][i][j] = int dN_i/dx_a dN_j/dx_b
    std::array<std::array<std::array<std::array<double, 6>, 6>, 2>, 2> graddiv;

    // div_comp[a][k][i] = -int L_k dN_i/dx_a  (pressure test row k)
    std::array<std::array<std::array<double, 6>, 3>, 2> div_comp;

    // curl rows for vorticity projection: curl_comp[a][k][i] = int L_k dN_i/dx_a
    std::array<std::array<std::array<double, 6>, 3>, 2> curl_comp;

    // conv[c][m][i][j] = int N_m N_i dN_j/dx_c; contract with nodal wind to
    // get the element convection block C_ij = sum_m (wx_m conv[0] + wy_m conv[1]).
    std::array<std::array<std::array<std::array<double, 6>, 6>, 6>, 2> conv;
};

/// Taylor-Hood space with componentwise velocity layout [u_x | u_y | p].
/// P2 scalar dofs live on the doubled lattice (2Nx periodic x, 2Ny+1 rows);
/// both velocity components share the same scalar dof set, so n_ux == n_uy.
struct TaylorHoodSpace {
    StripMesh mesh;
    BlockIndexMap map;
    index_t n_scalar = 0; // P2 dofs per velocity component

    std::vector<index_t> tri_p2; // ntriangles x 6 scalar dof ids
    std::vector<index_t> tri_p1; // ntriangles x 3 vertex ids
    std::vector<double> p2_x, p2_y; // P2 node coordinates

    /// Scalar P2 dofs on the walls y = +-1/2; the u_y unknowns at these
    /// nodes are constrained to zero (free-slip, strongly imposed).
    std::vector<index_t> wall_nodes;

    ElementMatrices elem[2]; // by triangle orientation

    index_t p2_dof(index_t tri, int local) const {
        return tri_p2[static_cast<std::size_t>(tri * 6 + local)];
    }
    index_t p1_dof(index_t tri, int local) const {
        return tri_p1[static_cast<std::size_t>(tri * 3 + local)];
    }
};

TaylorHoodSpace make_taylor_hood(const StripMesh& mesh);

/// Nodal interpolant of (fx, fy) into the velocity vector [u_x | u_y].
DenseVector interpolate_velocity(const TaylorHoodSpace& space,
                                 const std::function<double(double, double)>& fx,
                                 const std::function<double(double, double)>& fy);

/// Nodal interpolant of f at the pressure (P1 vertex) nodes.
DenseVector interpolate_pressure(const TaylorHoodSpace& space,
                                 const std::function<double(double, double)>& f);

/// Global dof ids of the constrained u_y unknowns (wall nodes shifted into
/// the u_y block).
std::vector<index_t> wall_uy_dofs(const TaylorHoodSpace& space);

} // namespace saddle

#endif // SADDLE_FEM_HPP
