#include "saddle/oseen.hpp"

#include "saddle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

namespace saddle {

namespace {

using Triplet = std::tuple<index_t, index_t, double>;

// Scalar P2 matrix from a per-element 6x6 local block.
template <class LocalValue>
CsrMatrix assemble_p2_scalar(const TaylorHoodSpace& space, LocalValue local) {
    const index_t n = space.n_scalar;
    const index_t ntri = space.mesh.ntriangles();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(ntri) * 36);
    for (index_t t = 0; t < ntri; ++t) {
        const int o = space.mesh.triangles[static_cast<std::size_t>(t)].orientation;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                trips.emplace_back(space.p2_dof(t, i), space.p2_dof(t, j),
                                   local(space.elem[o], t, i, j));
    }
    return CsrMatrix::from_triplets(n, n, std::move(trips));
}

// Two copies of a scalar block along the diagonal: [S 0; 0 S].
CsrMatrix block_diag2(const CsrMatrix& S) {
    const index_t n = S.nrows;
    std::vector<index_t> offsets(static_cast<std::size_t>(2 * n + 1));
    std::vector<index_t> cols(2 * S.col_indices.size());
    std::vector<double> vals(2 * S.values.size());
    const index_t nnz = S.nnz();
    for (index_t i = 0; i <= n; ++i) {
        offsets[static_cast<std::size_t>(i)] = S.row_offsets[static_cast<std::size_t>(i)];
        offsets[static_cast<std::size_t>(n + i)] = nnz + S.row_offsets[static_cast<std::size_t>(i)];
    }
    std::copy(S.col_indices.begin(), S.col_indices.end(), cols.begin());
    std::copy(S.values.begin(), S.values.end(), vals.begin());
    for (std::size_t p = 0; p < S.col_indices.size(); ++p) {
        cols[S.col_indices.size() + p] = S.col_indices[p] + n;
        vals[S.values.size() + p] = S.values[p];
    }
    return CsrMatrix(2 * n, 2 * n, std::move(offsets), std::move(cols), std::move(vals));
}

// Velocity-block matrix from per-element 2x2-component 6x6 locals.
template <class LocalValue>
CsrMatrix assemble_p2_vector(const TaylorHoodSpace& space, LocalValue local) {
    const index_t n = space.n_scalar;
    const index_t ntri = space.mesh.ntriangles();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(ntri) * 144);
    for (index_t t = 0; t < ntri; ++t) {
        const int o = space.mesh.triangles[static_cast<std::size_t>(t)].orientation;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j)
                        trips.emplace_back(a * n + space.p2_dof(t, i),
                                           b * n + space.p2_dof(t, j),
                                           local(space.elem[o], t, a, b, i, j));
    }
    return CsrMatrix::from_triplets(2 * n, 2 * n, std::move(trips));
}

// Scalar convection matrix for the given nodal wind: C_ij = int (w.grad N_j) N_i.
CsrMatrix conv_scalar(const TaylorHoodSpace& space, const DenseVector& wind) {
    const index_t n = space.n_scalar;
    if (static_cast<index_t>(wind.size()) != 2 * n)
        throw DimensionError("assemble_convection: wind has size " +
                             std::to_string(wind.size()) + ", expected " +
                             std::to_string(2 * n));
    const index_t ntri = space.mesh.ntriangles();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(ntri) * 36);
    double wx[6], wy[6], loc[36];
    for (index_t t = 0; t < ntri; ++t) {
        const ElementMatrices& e =
            space.elem[space.mesh.triangles[static_cast<std::size_t>(t)].orientation];
        for (int m = 0; m < 6; ++m) {
            const auto g = static_cast<std::size_t>(space.p2_dof(t, m));
            wx[m] = wind[g];
            wy[m] = wind[static_cast<std::size_t>(n) + g];
        }
        std::fill(loc, loc + 36, 0.0);
        for (int m = 0; m < 6; ++m)
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    loc[i * 6 + j] += wx[m] * e.conv[0][m][i][j] + wy[m] * e.conv[1][m][i][j];
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                trips.emplace_back(space.p2_dof(t, i), space.p2_dof(t, j), loc[i * 6 + j]);
    }
    return CsrMatrix::from_triplets(n, n, std::move(trips));
}

std::vector<bool> constrained_mask(const TaylorHoodSpace& space) {
    std::vector<bool> mask(static_cast<std::size_t>(space.map.n_u()), false);
    for (index_t d : wall_uy_dofs(space))
        mask[static_cast<std::size_t>(d)] = true;
    return mask;
}

} // namespace

CsrMatrix assemble_mass(const TaylorHoodSpace& space) {
    CsrMatrix Ms = assemble_p2_scalar(
        space, [](const ElementMatrices& e, index_t, int i, int j) { return e.mass[i][j]; });
    return block_diag2(Ms);
}

CsrMatrix assemble_pressure_mass(const TaylorHoodSpace& space) {
    const index_t np = space.map.n_p;
    const index_t ntri = space.mesh.ntriangles();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(ntri) * 9);
    for (index_t t = 0; t < ntri; ++t) {
        const ElementMatrices& e =
            space.elem[space.mesh.triangles[static_cast<std::size_t>(t)].orientation];
        for (int k = 0; k < 3; ++k)
            for (int m = 0; m < 3; ++m)
                trips.emplace_back(space.p1_dof(t, k), space.p1_dof(t, m), e.p1_mass[k][m]);
    }
    return CsrMatrix::from_triplets(np, np, std::move(trips));
}

CsrMatrix assemble_pressure_laplacian(const TaylorHoodSpace& space) {
    const index_t np = space.map.n_p;
    const index_t ntri = space.mesh.ntriangles();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(ntri) * 9);
    for (index_t t = 0; t < ntri; ++t) {
        const ElementMatrices& e =
            space.elem[space.mesh.triangles[static_cast<std::size_t>(t)].orientation];
        for (int k = 0; k < 3; ++k)
            for (int m = 0; m < 3; ++m)
                trips.emplace_back(space.p1_dof(t, k), space.p1_dof(t, m), e.p1_stiff[k][m]);
    }
    return CsrMatrix::from_triplets(np, np, std::move(trips));
}

CsrMatrix assemble_viscous(const TaylorHoodSpace& space, double nu) {
    return assemble_p2_vector(space,
                              [nu](const ElementMatrices& e, index_t, int a, int b, int i, int j) {
                                  return nu * e.visc[a][b][i][j];
                              });
}

CsrMatrix assemble_convection(const TaylorHoodSpace& space, const DenseVector& wind) {
    return block_diag2(conv_scalar(space, wind));
}

CsrMatrix assemble_graddiv(const TaylorHoodSpace& space, double gamma) {
    return assemble_p2_vector(
        space, [gamma](const ElementMatrices& e, index_t, int a, int b, int i, int j) {
            return gamma * e.graddiv[a][b][i][j];
        });
}

CsrMatrix assemble_graddiv_trace(const TaylorHoodSpace& space, double gamma) {
    // Rebuild int div(psi) div(phi) by forming the strain tensor of each
    // basis field at each quadrature point and multiplying the traces.
    const index_t n = space.n_scalar;
    const index_t ntri = space.mesh.ntriangles();
    const TriangleQuadrature q = triangle_quadrature_d5();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(ntri) * 144);
    for (index_t t = 0; t < ntri; ++t) {
        const int o = space.mesh.triangles[static_cast<std::size_t>(t)].orientation;
        const double detj = space.elem[o].detj;
        double loc[2][2][6][6] = {};
        for (int p = 0; p < TriangleQuadrature::npoints; ++p) {
            const auto gref = p2_gradients(q.xi[p], q.eta[p]);
            double tr[2][6];
            for (int i = 0; i < 6; ++i) {
                std::array<double, 2> g;
                if (o == 0)
                    g = {gref[i][0] / space.mesh.hx,
                         (-gref[i][0] + gref[i][1]) / space.mesh.hy};
                else
                    g = {(gref[i][0] - gref[i][1]) / space.mesh.hx,
                         gref[i][1] / space.mesh.hy};
                for (int a = 0; a < 2; ++a) {
                    // E(N_i e_a)_{kl} = (g_k delta_{la} + g_l delta_{ka}) / 2
                    double strain[2][2];
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l)
                            strain[k][l] = 0.5 * ((k == a ? g[l] : 0.0) + (l == a ? g[k] : 0.0));
                    tr[a][i] = strain[0][0] + strain[1][1];
                }
            }
            const double w = q.weight[p] * detj;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int i = 0; i < 6; ++i)
                        for (int j = 0; j < 6; ++j)
                            loc[a][b][i][j] += w * tr[a][i] * tr[b][j];
        }
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j)
                        trips.emplace_back(a * n + space.p2_dof(t, i),
                                           b * n + space.p2_dof(t, j),
                                           gamma * loc[a][b][i][j]);
    }
    return CsrMatrix::from_triplets(2 * n, 2 * n, std::move(trips));
}

CsrMatrix assemble_div(const TaylorHoodSpace& space) {
    const index_t n = space.n_scalar;
    const index_t np = space.map.n_p;
    const index_t ntri = space.mesh.ntriangles();
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(ntri) * 36);
    for (index_t t = 0; t < ntri; ++t) {
        const ElementMatrices& e =
            space.elem[space.mesh.triangles[static_cast<std::size_t>(t)].orientation];
        for (int k = 0; k < 3; ++k)
            for (int a = 0; a < 2; ++a)
                for (int i = 0; i < 6; ++i)
                    trips.emplace_back(space.p1_dof(t, k), a * n + space.p2_dof(t, i),
                                       e.div_comp[a][k][i]);
    }
    return CsrMatrix::from_triplets(np, 2 * n, std::move(trips));
}

void apply_wall_constraints(const TaylorHoodSpace& space, CsrMatrix& A, bool unit_diagonal) {
    if (A.nrows != space.map.n_u() || A.ncols != space.map.n_u())
        throw DimensionError("apply_wall_constraints: matrix is not the velocity block");
    const std::vector<bool> mask = constrained_mask(space);
    for (index_t r = 0; r < A.nrows; ++r) {
        const bool row_hit = mask[static_cast<std::size_t>(r)];
        for (index_t p = A.row_offsets[static_cast<std::size_t>(r)];
             p < A.row_offsets[static_cast<std::size_t>(r + 1)]; ++p) {
            const index_t c = A.col_indices[static_cast<std::size_t>(p)];
            if (row_hit || mask[static_cast<std::size_t>(c)])
                A.values[static_cast<std::size_t>(p)] =
                    (unit_diagonal && r == c) ? 1.0 : 0.0;
        }
    }
}

void apply_wall_constraints_div(const TaylorHoodSpace& space, CsrMatrix& B) {
    if (B.ncols != space.map.n_u())
        throw DimensionError("apply_wall_constraints_div: matrix is not the divergence block");
    const std::vector<bool> mask = constrained_mask(space);
    for (std::size_t p = 0; p < B.col_indices.size(); ++p)
        if (mask[static_cast<std::size_t>(B.col_indices[p])])
            B.values[p] = 0.0;
}

DenseVector apply_saddle(const BlockSaddleSystem& sys, const DenseVector& x) {
    const auto nu_ = static_cast<std::size_t>(sys.map.n_u());
    const auto np_ = static_cast<std::size_t>(sys.map.n_p);
    if (x.size() != nu_ + np_)
        throw DimensionError("apply_saddle: vector has size " + std::to_string(x.size()) +
                             ", expected " + std::to_string(nu_ + np_));
    const DenseVector u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nu_));
    const DenseVector p(x.begin() + static_cast<std::ptrdiff_t>(nu_), x.end());
    DenseVector yu = spmv(sys.A, u);
    spmv_add(sys.Bt, p, yu);
    DenseVector yp = spmv(sys.B, u);
    if (sys.has_C()) {
        const DenseVector cp = spmv(sys.C, p);
        for (std::size_t k = 0; k < np_; ++k)
            yp[k] -= cp[k];
    }
    DenseVector y(nu_ + np_);
    std::copy(yu.begin(), yu.end(), y.begin());
    std::copy(yp.begin(), yp.end(), y.begin() + static_cast<std::ptrdiff_t>(nu_));
    return y;
}

OseenAssembler::OseenAssembler(const TaylorHoodSpace& space, double nu, double gamma)
    : space_(space), nu_(nu), gamma_(gamma) {
    const index_t n = space.n_scalar;
    const index_t ntri = space.mesh.ntriangles();

    // Scalar pattern and mass values; the same pattern underlies every block.
    CsrMatrix Ms = assemble_p2_scalar(
        space, [](const ElementMatrices& e, index_t, int i, int j) { return e.mass[i][j]; });
    s_offsets_ = Ms.row_offsets;
    s_cols_ = Ms.col_indices;
    mass_s_ = Ms.values;
    M_full_ = block_diag2(Ms);

    // Element scatter into the scalar pattern.
    scatter_.resize(static_cast<std::size_t>(ntri) * 36);
    for (index_t t = 0; t < ntri; ++t) {
        for (int i = 0; i < 6; ++i) {
            const index_t gi = space.p2_dof(t, i);
            const index_t lo = s_offsets_[static_cast<std::size_t>(gi)];
            const index_t hi = s_offsets_[static_cast<std::size_t>(gi + 1)];
            for (int j = 0; j < 6; ++j) {
                const index_t gj = space.p2_dof(t, j);
                const auto first = s_cols_.begin() + static_cast<std::ptrdiff_t>(lo);
                const auto last = s_cols_.begin() + static_cast<std::ptrdiff_t>(hi);
                const auto it = std::lower_bound(first, last, gj);
                if (it == last || *it != gj)
                    throw Error("oseen assembler: scalar pattern is missing an element entry");
                scatter_[static_cast<std::size_t>(t) * 36 + static_cast<std::size_t>(i * 6 + j)] =
                    lo + static_cast<index_t>(it - first);
            }
        }
    }

    // Static part K + gamma*G defines the velocity-block pattern [[S,S],[S,S]].
    {
        CsrMatrix K = assemble_viscous(space, nu_);
        const CsrMatrix G = assemble_graddiv(space, gamma_);
        if (K.row_offsets != G.row_offsets || K.col_indices != G.col_indices)
            throw Error("oseen assembler: viscous and grad-div patterns differ");
        for (std::size_t p = 0; p < K.values.size(); ++p)
            K.values[p] += G.values[p];
        a_offsets_ = std::move(K.row_offsets);
        a_cols_ = std::move(K.col_indices);
        kg_values_ = std::move(K.values);
    }

    // Scalar position -> position of the xx and yy block entries.
    s_to_xx_.resize(s_cols_.size());
    s_to_yy_.resize(s_cols_.size());
    for (index_t i = 0; i < n; ++i) {
        const index_t slo = s_offsets_[static_cast<std::size_t>(i)];
        const index_t slen = s_offsets_[static_cast<std::size_t>(i + 1)] - slo;
        const index_t alo_x = a_offsets_[static_cast<std::size_t>(i)];
        const index_t alo_y = a_offsets_[static_cast<std::size_t>(n + i)];
        if (a_offsets_[static_cast<std::size_t>(i + 1)] - alo_x != 2 * slen ||
            a_offsets_[static_cast<std::size_t>(n + i + 1)] - alo_y != 2 * slen)
            throw Error("oseen assembler: velocity pattern rows are not two scalar copies");
        for (index_t k = 0; k < slen; ++k) {
            s_to_xx_[static_cast<std::size_t>(slo + k)] = alo_x + k;
            s_to_yy_[static_cast<std::size_t>(slo + k)] = alo_y + slen + k;
        }
    }

    constrained_ = wall_uy_dofs(space);
    std::sort(constrained_.begin(), constrained_.end());

    // Positions wiped by the wall constraints, and the unit diagonals.
    std::vector<bool> mask(static_cast<std::size_t>(2 * n), false);
    for (index_t d : constrained_)
        mask[static_cast<std::size_t>(d)] = true;
    for (index_t r = 0; r < 2 * n; ++r) {
        const bool row_hit = mask[static_cast<std::size_t>(r)];
        for (index_t p = a_offsets_[static_cast<std::size_t>(r)];
             p < a_offsets_[static_cast<std::size_t>(r + 1)]; ++p) {
            const index_t c = a_cols_[static_cast<std::size_t>(p)];
            if (r == c && row_hit)
                diag_positions_.push_back(p);
            else if (row_hit || mask[static_cast<std::size_t>(c)])
                zero_positions_.push_back(p);
        }
    }

    B_ = assemble_div(space);
    apply_wall_constraints_div(space, B_);
    Bt_ = transpose(B_);
    Mp_ = assemble_pressure_mass(space);
    Lp_ = assemble_pressure_laplacian(space);
}

BlockSaddleSystem OseenAssembler::build(double alpha, const DenseVector& wind,
                                        const DenseVector& mass_combo,
                                        bool retain_addends) const {
    const index_t n = space_.n_scalar;
    if (static_cast<index_t>(wind.size()) != 2 * n ||
        static_cast<index_t>(mass_combo.size()) != 2 * n)
        throw DimensionError("OseenAssembler::build: velocity vectors have the wrong size");

    // Per-step scalar block alpha*M_s + N_s(wind) on the shared pattern.
    std::vector<double> sv(mass_s_.size());
    for (std::size_t p = 0; p < sv.size(); ++p)
        sv[p] = alpha * mass_s_[p];
    const index_t ntri = space_.mesh.ntriangles();
    double wx[6], wy[6], loc[36];
    for (index_t t = 0; t < ntri; ++t) {
        const ElementMatrices& e =
            space_.elem[space_.mesh.triangles[static_cast<std::size_t>(t)].orientation];
        for (int m = 0; m < 6; ++m) {
            const auto g = static_cast<std::size_t>(space_.p2_dof(t, m));
            wx[m] = wind[g];
            wy[m] = wind[static_cast<std::size_t>(n) + g];
        }
        std::fill(loc, loc + 36, 0.0);
        for (int m = 0; m < 6; ++m)
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    loc[i * 6 + j] += wx[m] * e.conv[0][m][i][j] + wy[m] * e.conv[1][m][i][j];
        const index_t base = t * 36;
        for (int q = 0; q < 36; ++q)
            sv[static_cast<std::size_t>(scatter_[static_cast<std::size_t>(base + q)])] += loc[q];
    }

    std::vector<double> av = kg_values_;
    for (std::size_t p = 0; p < sv.size(); ++p) {
        av[static_cast<std::size_t>(s_to_xx_[p])] += sv[p];
        av[static_cast<std::size_t>(s_to_yy_[p])] += sv[p];
    }
    for (index_t p : zero_positions_)
        av[static_cast<std::size_t>(p)] = 0.0;
    for (index_t p : diag_positions_)
        av[static_cast<std::size_t>(p)] = 1.0;

    BlockSaddleSystem sys;
    sys.map = space_.map;
    sys.A = CsrMatrix(2 * n, 2 * n, a_offsets_, a_cols_, std::move(av));
    sys.B = B_;
    sys.Bt = Bt_;
    sys.rhs_u = spmv(M_full_, mass_combo);
    for (index_t d : constrained_)
        sys.rhs_u[static_cast<std::size_t>(d)] = 0.0;
    sys.rhs_p.assign(static_cast<std::size_t>(space_.map.n_p), 0.0);
    sys.alpha = alpha;
    sys.nu = nu_;
    sys.gamma = gamma_;
    sys.wind = wind;
    sys.constrained = constrained_;

    if (retain_addends) {
        sys.M = M_full_;
        sys.K = assemble_viscous(space_, nu_);
        sys.N = assemble_convection(space_, wind);
        sys.G = assemble_graddiv(space_, gamma_);
    }
    return sys;
}

BlockSaddleSystem OseenAssembler::build_bdf2(const DenseVector& u_prev,
                                             const DenseVector& u_prev2,
                                             const DenseVector& f, double dt) const {
    if (dt <= 0.0)
        throw ConfigError("OseenAssembler::build_bdf2: dt must be positive");
    const std::size_t nu2 = static_cast<std::size_t>(2 * space_.n_scalar);
    if (u_prev.size() != nu2 || u_prev2.size() != nu2)
        throw DimensionError("OseenAssembler::build_bdf2: state vectors have the wrong size");
    DenseVector wind(nu2), combo(nu2);
    for (std::size_t k = 0; k < nu2; ++k) {
        wind[k] = 2.0 * u_prev[k] - u_prev2[k];
        combo[k] = (4.0 * u_prev[k] - u_prev2[k]) / (2.0 * dt);
    }
    if (!f.empty()) {
        if (f.size() != nu2)
            throw DimensionError("OseenAssembler::build_bdf2: forcing has the wrong size");
        for (std::size_t k = 0; k < nu2; ++k)
            combo[k] += f[k];
    }
    return build(1.5 / dt, wind, combo, true);
}

BlockSaddleSystem OseenAssembler::build_bdf1(const DenseVector& u_prev, const DenseVector& f,
                                             double dt) const {
    if (dt <= 0.0)
        throw ConfigError("OseenAssembler::build_bdf1: dt must be positive");
    const std::size_t nu2 = static_cast<std::size_t>(2 * space_.n_scalar);
    if (u_prev.size() != nu2)
        throw DimensionError("OseenAssembler::build_bdf1: state vector has the wrong size");
    DenseVector combo(nu2);
    for (std::size_t k = 0; k < nu2; ++k)
        combo[k] = u_prev[k] / dt;
    if (!f.empty()) {
        if (f.size() != nu2)
            throw DimensionError("OseenAssembler::build_bdf1: forcing has the wrong size");
        for (std::size_t k = 0; k < nu2; ++k)
            combo[k] += f[k];
    }
    return build(1.0 / dt, u_prev, combo, true);
}

BlockSaddleSystem build_oseen_system(const TaylorHoodSpace& space,
                                     const OseenCoefficients& coeffs, const DenseVector& f,
                                     const DenseVector& u_prev, const DenseVector& u_prev2,
                                     double dt) {
    const OseenAssembler assembler(space, coeffs.nu, coeffs.gamma);
    return assembler.build_bdf2(u_prev, u_prev2, f, dt);
}

BlockSaddleSystem build_oseen_system_bdf1(const TaylorHoodSpace& space,
                                          const OseenCoefficients& coeffs, const DenseVector& f,
                                          const DenseVector& u_prev, double dt) {
    const OseenAssembler assembler(space, coeffs.nu, coeffs.gamma);
    return assembler.build_bdf1(u_prev, f, dt);
}

} // namespace saddle
