#include "saddle/sparse_lu.hpp"

#include "saddle/errors.hpp"
#include "saddle/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace saddle {

namespace {

struct ColEntry {
    index_t row; // original row index during factorization
    double value;
};

void check_permutation(const std::vector<index_t>& p, index_t n, const char* who) {
    if (static_cast<index_t>(p.size()) != n)
        throw std::invalid_argument(std::string(who) + ": ordering length != n");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (index_t v : p) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument(std::string(who) + ": ordering is not a permutation");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

// Depth-first search from `start` over the column dependency graph: a
// pivotal node i (pinv[i] >= 0) points at the rows of its L column.
// Finished nodes are written to xi[--top], so xi[top..n-1] ends up in
// topological order.
index_t reach_dfs(index_t start, index_t col_stamp,
                  const std::vector<std::vector<ColEntry>>& lcols,
                  const std::vector<index_t>& pinv,
                  std::vector<index_t>& mark,
                  std::vector<index_t>& node_stack,
                  std::vector<index_t>& child_pos,
                  std::vector<index_t>& xi, index_t top) {
    index_t sp = 0;
    node_stack[0] = start;
    child_pos[0] = 0;
    mark[static_cast<std::size_t>(start)] = col_stamp;
    while (sp >= 0) {
        const index_t i = node_stack[static_cast<std::size_t>(sp)];
        const index_t t = pinv[static_cast<std::size_t>(i)];
        bool descended = false;
        if (t >= 0) {
            const auto& kids = lcols[static_cast<std::size_t>(t)];
            for (index_t c = child_pos[static_cast<std::size_t>(sp)];
                 c < static_cast<index_t>(kids.size()); ++c) {
                const index_t r = kids[static_cast<std::size_t>(c)].row;
                if (mark[static_cast<std::size_t>(r)] != col_stamp) {
                    mark[static_cast<std::size_t>(r)] = col_stamp;
                    child_pos[static_cast<std::size_t>(sp)] = c + 1;
                    ++sp;
                    node_stack[static_cast<std::size_t>(sp)] = r;
                    child_pos[static_cast<std::size_t>(sp)] = 0;
                    descended = true;
                    break;
                }
            }
        }
        if (!descended) {
            xi[static_cast<std::size_t>(--top)] = i;
            --sp;
        }
    }
    return top;
}

} // namespace

LuFactors sparse_lu(const CsrMatrix& A, const std::vector<index_t>& ordering,
                    double pivot_tol) {
    if (A.nrows != A.ncols)
        throw DimensionError("sparse_lu: matrix must be square");
    const index_t n = A.nrows;
    check_permutation(ordering, n, "sparse_lu");
    if (pivot_tol < 0.0 || pivot_tol > 1.0)
        throw std::invalid_argument("sparse_lu: pivot_tol must lie in [0,1]");

    // Columns of A come from the transpose (CSR rows of Aᵀ).
    const CsrMatrix T = transpose(A);

    std::vector<std::vector<ColEntry>> lcols(static_cast<std::size_t>(n));
    std::vector<std::vector<ColEntry>> ucols(static_cast<std::size_t>(n));
    std::vector<index_t> pinv(static_cast<std::size_t>(n), -1);

    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    std::vector<index_t> mark(static_cast<std::size_t>(n), -1);
    std::vector<index_t> node_stack(static_cast<std::size_t>(n));
    std::vector<index_t> child_pos(static_cast<std::size_t>(n));
    std::vector<index_t> xi(static_cast<std::size_t>(n));

    for (index_t k = 0; k < n; ++k) {
        const index_t qk = ordering[static_cast<std::size_t>(k)];

        // Symbolic: pattern of column qk expanded through finished L columns.
        index_t top = n;
        for (index_t p = T.row_offsets[qk]; p < T.row_offsets[qk + 1]; ++p) {
            const index_t i = T.col_indices[static_cast<std::size_t>(p)];
            if (mark[static_cast<std::size_t>(i)] != k)
                top = reach_dfs(i, k, lcols, pinv, mark, node_stack, child_pos, xi, top);
        }

        // Numeric: scatter, then eliminate in topological order.
        for (index_t p = T.row_offsets[qk]; p < T.row_offsets[qk + 1]; ++p)
            x[static_cast<std::size_t>(T.col_indices[static_cast<std::size_t>(p)])] =
                T.values[static_cast<std::size_t>(p)];
        for (index_t s = top; s < n; ++s) {
            const index_t i = xi[static_cast<std::size_t>(s)];
            const index_t t = pinv[static_cast<std::size_t>(i)];
            if (t < 0) continue;
            const double xi_val = x[static_cast<std::size_t>(i)];
            if (xi_val != 0.0)
                for (const ColEntry& e : lcols[static_cast<std::size_t>(t)])
                    x[static_cast<std::size_t>(e.row)] -= e.value * xi_val;
        }

        // Pivot among non-pivotal rows; keep the structural diagonal when
        // it clears the threshold.
        double colmax = 0.0;
        for (index_t s = top; s < n; ++s) {
            const index_t i = xi[static_cast<std::size_t>(s)];
            if (pinv[static_cast<std::size_t>(i)] < 0)
                colmax = std::max(colmax, std::fabs(x[static_cast<std::size_t>(i)]));
        }
        if (colmax == 0.0) {
            for (index_t s = top; s < n; ++s) x[static_cast<std::size_t>(xi[static_cast<std::size_t>(s)])] = 0.0;
            throw SingularMatrixError("sparse_lu: no nonzero pivot in column", k);
        }
        index_t pivot_row = -1;
        if (pinv[static_cast<std::size_t>(qk)] < 0 &&
            std::fabs(x[static_cast<std::size_t>(qk)]) >= pivot_tol * colmax &&
            x[static_cast<std::size_t>(qk)] != 0.0) {
            pivot_row = qk;
        } else {
            double best = -1.0;
            for (index_t s = top; s < n; ++s) {
                const index_t i = xi[static_cast<std::size_t>(s)];
                if (pinv[static_cast<std::size_t>(i)] < 0 &&
                    std::fabs(x[static_cast<std::size_t>(i)]) > best) {
                    best = std::fabs(x[static_cast<std::size_t>(i)]);
                    pivot_row = i;
                }
            }
        }
        const double pivot = x[static_cast<std::size_t>(pivot_row)];
        pinv[static_cast<std::size_t>(pivot_row)] = k;

        auto& uc = ucols[static_cast<std::size_t>(k)];
        auto& lc = lcols[static_cast<std::size_t>(k)];
        for (index_t s = top; s < n; ++s) {
            const index_t i = xi[static_cast<std::size_t>(s)];
            const double v = x[static_cast<std::size_t>(i)];
            const index_t t = pinv[static_cast<std::size_t>(i)];
            if (i == pivot_row) {
                uc.push_back({k, pivot});
            } else if (t >= 0) {
                if (v != 0.0) uc.push_back({t, v});
            } else {
                if (v != 0.0) lc.push_back({i, v / pivot});
            }
            x[static_cast<std::size_t>(i)] = 0.0;
        }
    }

    // Assemble CSR factors in factor-row numbering. Scanning columns in
    // ascending order fills each row with ascending column indices.
    LuFactors F;
    F.n = n;
    F.col_perm = ordering;
    F.row_perm.assign(static_cast<std::size_t>(n), 0);
    for (index_t i = 0; i < n; ++i)
        F.row_perm[static_cast<std::size_t>(pinv[static_cast<std::size_t>(i)])] = i;

    const auto assemble = [n](const std::vector<std::vector<ColEntry>>& cols,
                              const std::vector<index_t>* pinv_map) {
        CsrMatrix M;
        M.nrows = M.ncols = n;
        M.row_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
        index_t nnz = 0;
        for (const auto& c : cols) nnz += static_cast<index_t>(c.size());
        M.col_indices.resize(static_cast<std::size_t>(nnz));
        M.values.resize(static_cast<std::size_t>(nnz));
        for (const auto& c : cols)
            for (const ColEntry& e : c) {
                const index_t r = pinv_map ? (*pinv_map)[static_cast<std::size_t>(e.row)] : e.row;
                ++M.row_offsets[static_cast<std::size_t>(r) + 1];
            }
        for (index_t i = 0; i < n; ++i)
            M.row_offsets[static_cast<std::size_t>(i) + 1] += M.row_offsets[static_cast<std::size_t>(i)];
        std::vector<index_t> next(M.row_offsets.begin(), M.row_offsets.end() - 1);
        for (index_t j = 0; j < n; ++j)
            for (const ColEntry& e : cols[static_cast<std::size_t>(j)]) {
                const index_t r = pinv_map ? (*pinv_map)[static_cast<std::size_t>(e.row)] : e.row;
                const index_t p = next[static_cast<std::size_t>(r)]++;
                M.col_indices[static_cast<std::size_t>(p)] = j;
                M.values[static_cast<std::size_t>(p)] = e.value;
            }
        return M;
    };

    F.L = assemble(lcols, &pinv); // L rows are factor rows via pinv
    F.U = assemble(ucols, nullptr); // U rows already factor rows
    F.fill_nnz = F.L.nnz() + F.U.nnz();
    return F;
}

DenseVector lu_solve(const LuFactors& F, const DenseVector& b) {
    const index_t n = F.n;
    if (static_cast<index_t>(b.size()) != n)
        throw DimensionError("lu_solve: length of b != n");

    DenseVector z(static_cast<std::size_t>(n));
    for (index_t k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(F.row_perm[static_cast<std::size_t>(k)])];

    // (I + L) z' = z, strictly lower L in CSR row order.
    for (index_t k = 0; k < n; ++k) {
        double s = z[static_cast<std::size_t>(k)];
        for (index_t p = F.L.row_offsets[k]; p < F.L.row_offsets[k + 1]; ++p)
            s -= F.L.values[static_cast<std::size_t>(p)] *
                 z[static_cast<std::size_t>(F.L.col_indices[static_cast<std::size_t>(p)])];
        z[static_cast<std::size_t>(k)] = s;
    }

    // U w = z', diagonal is the first entry of each row.
    for (index_t k = n; k-- > 0;) {
        double s = z[static_cast<std::size_t>(k)];
        const index_t begin = F.U.row_offsets[k];
        const index_t end = F.U.row_offsets[k + 1];
        for (index_t p = begin + 1; p < end; ++p)
            s -= F.U.values[static_cast<std::size_t>(p)] *
                 z[static_cast<std::size_t>(F.U.col_indices[static_cast<std::size_t>(p)])];
        z[static_cast<std::size_t>(k)] = s / F.U.values[static_cast<std::size_t>(begin)];
    }

    DenseVector x(static_cast<std::size_t>(n));
    for (index_t j = 0; j < n; ++j)
        x[static_cast<std::size_t>(F.col_perm[static_cast<std::size_t>(j)])] = z[static_cast<std::size_t>(j)];
    return x;
}

std::vector<LuFactors> block_diag_lu(const std::vector<CsrMatrix>& blocks,
                                     double pivot_tol) {
    std::vector<LuFactors> out;
    out.reserve(blocks.size());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        try {
            out.push_back(sparse_lu(blocks[bi], amd_order(blocks[bi]), pivot_tol));
        } catch (const SingularMatrixError& e) {
            throw SingularMatrixError(
                "block_diag_lu: block " + std::to_string(bi) + " singular: " + e.what(),
                e.step());
        }
    }
    return out;
}

} // namespace saddle
