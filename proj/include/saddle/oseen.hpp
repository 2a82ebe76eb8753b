/// @file oseen.hpp
/// @brief Assembly of the saddle-point blocks for semi-implicit time stepping:
///        A = alpha*M + K(nu) + N(w) + gamma*G together with the divergence
///        block B, free-slip wall constraints, and a caching assembler for
///        the per-step path.

#ifndef SADDLE_OSEEN_HPP
#define SADDLE_OSEEN_HPP

#include "saddle/csr_matrix.hpp"
#include "saddle/fem.hpp"
#include "saddle/types.hpp"

#include <vector>

namespace saddle {

/// Scalars of the Oseen operator. alpha and the wind are chosen by the time
/// discretization; nu and gamma are fixed per run.
struct OseenCoefficients {
    double nu = 0.0;
    double gamma = 0.0;
};

/// One assembled time-step system
///   [ A  B^T ] [u]   [rhs_u]
///   [ B  -C  ] [p] = [rhs_p]
/// with free-slip wall rows already reduced to identity equations u_y = 0.
/// C is optional stabilization; an empty matrix means C = 0. When built with
/// retain_addends, M/K/N/G hold the unconstrained addends of A so that
/// A == constrain(alpha*M + K + N + gamma*G) entrywise.
struct BlockSaddleSystem {
    BlockIndexMap map;
    CsrMatrix A;
    CsrMatrix B;
    CsrMatrix Bt;
    CsrMatrix C;
    DenseVector rhs_u, rhs_p;

    double alpha = 0.0, nu = 0.0, gamma = 0.0;
    DenseVector wind;
    std::vector<index_t> constrained; // u dofs pinned to zero

    CsrMatrix M, K, N, G; // retained addends; empty if not requested

    bool has_C() const { return C.nrows > 0; }
    index_t n_total() const { return map.n_total(); }
};

/// y = [A u + B^T p; B u - C p] for the block system.
DenseVector apply_saddle(const BlockSaddleSystem& sys, const DenseVector& x);

/// Velocity mass matrix (block diagonal, both components), unconstrained.
CsrMatrix assemble_mass(const TaylorHoodSpace& space);
/// Pressure (P1) mass matrix.
CsrMatrix assemble_pressure_mass(const TaylorHoodSpace& space);
/// Pressure (P1) stiffness matrix; singular with the constants as kernel.
CsrMatrix assemble_pressure_laplacian(const TaylorHoodSpace& space);
/// 2*nu * int E(u):E(v), unconstrained.
CsrMatrix assemble_viscous(const TaylorHoodSpace& space, double nu);
/// int (w . grad u) . v for P2 wind w given as a velocity vector.
CsrMatrix assemble_convection(const TaylorHoodSpace& space, const DenseVector& wind);
/// gamma * int div u div v.
CsrMatrix assemble_graddiv(const TaylorHoodSpace& space, double gamma);
/// Same bilinear form evaluated through the strain tensor trace at each
/// quadrature point; agrees with assemble_graddiv entrywise.
CsrMatrix assemble_graddiv_trace(const TaylorHoodSpace& space, double gamma);
/// Divergence block, B[k, i] = -int L_k div psi_i, unconstrained.
CsrMatrix assemble_div(const TaylorHoodSpace& space);

/// Zeroes rows and columns of the constrained u_y dofs; with unit_diagonal
/// the diagonal entry becomes 1 (identity equation).
void apply_wall_constraints(const TaylorHoodSpace& space, CsrMatrix& A,
                            bool unit_diagonal);
/// Zeroes the constrained u_y columns of the divergence block.
void apply_wall_constraints_div(const TaylorHoodSpace& space, CsrMatrix& B);

/// Builds the BDF2 step system: alpha = 3/(2*dt), wind = 2*u_prev - u_prev2,
/// rhs_u = M*((4*u_prev - u_prev2)/(2*dt) + f). Pass an empty f for no
/// forcing. Addends are retained.
BlockSaddleSystem build_oseen_system(const TaylorHoodSpace& space,
                                     const OseenCoefficients& coeffs,
                                     const DenseVector& f,
                                     const DenseVector& u_prev,
                                     const DenseVector& u_prev2, double dt);

/// Bootstrap variant: alpha = 1/dt, wind = u_prev, rhs_u = M*(u_prev/dt + f).
/// Used for the first time step, before two back values exist.
BlockSaddleSystem build_oseen_system_bdf1(const TaylorHoodSpace& space,
                                          const OseenCoefficients& coeffs,
                                          const DenseVector& f,
                                          const DenseVector& u_prev, double dt);

/// Caches everything that does not change between time steps: sparsity
/// patterns, element scatter maps, the static addends K + gamma*G, the
/// constrained divergence block, and the pressure operators. Per-step work
/// is then one values pass over the fixed pattern. The space must outlive
/// the assembler.
class OseenAssembler {
  public:
    OseenAssembler(const TaylorHoodSpace& space, double nu, double gamma);

    /// Assembles the step system for the given reaction coefficient and
    /// wind; rhs_u = M * mass_combo (entries at constrained dofs zeroed).
    /// retain_addends materializes M/K/N/G into the result.
    BlockSaddleSystem build(double alpha, const DenseVector& wind,
                            const DenseVector& mass_combo,
                            bool retain_addends = false) const;

    BlockSaddleSystem build_bdf2(const DenseVector& u_prev, const DenseVector& u_prev2,
                                 const DenseVector& f, double dt) const;
    BlockSaddleSystem build_bdf1(const DenseVector& u_prev, const DenseVector& f,
                                 double dt) const;

    const CsrMatrix& mass() const { return M_full_; }
    const CsrMatrix& pressure_mass() const { return Mp_; }
    const CsrMatrix& pressure_laplacian() const { return Lp_; }
    const TaylorHoodSpace& space() const { return space_; }
    double nu() const { return nu_; }
    double gamma() const { return gamma_; }

  private:
    const TaylorHoodSpace& space_;
    double nu_, gamma_;

    // scalar P2 pattern shared by every velocity block
    std::vector<index_t> s_offsets_, s_cols_;
    std::vector<index_t> scatter_; // ntri*36 positions into the scalar pattern
    std::vector<double> mass_s_;   // scalar mass values on the pattern

    // full velocity pattern [[S,S],[S,S]] plus static K + gamma*G values
    std::vector<index_t> a_offsets_, a_cols_;
    std::vector<double> kg_values_;
    std::vector<index_t> s_to_xx_, s_to_yy_; // scalar position -> A position
    std::vector<index_t> zero_positions_;    // constrained rows and columns in A
    std::vector<index_t> diag_positions_;    // constrained diagonal entries in A

    CsrMatrix M_full_, B_, Bt_, Mp_, Lp_;
    std::vector<index_t> constrained_;
};

} // namespace saddle

#endif // SADDLE_OSEEN_HPP
