/// @file sparse_lu.hpp
/// @brief Left-looking sparse LU with threshold partial pivoting.

#ifndef SADDLE_SPARSE_LU_HPP
#define SADDLE_SPARSE_LU_HPP

#include "saddle/csr_matrix.hpp"
#include "saddle/types.hpp"

#include <vector>

namespace saddle {

/// Permuted triangular factors satisfying (P_r A P_c)[i][j] = A[row_perm[i]][col_perm[j]]
/// and P_r A P_c == L·U within 1e-10·‖A‖_max per entry.
struct LuFactors {
    CsrMatrix L;                    // unit lower triangular, unit diagonal not stored
    CsrMatrix U;                    // upper triangular, no zero diagonal
    std::vector<index_t> row_perm;  // factor row k holds original row row_perm[k]
    std::vector<index_t> col_perm;  // factor column k holds original column col_perm[k]
    index_t n = 0;
    index_t fill_nnz = 0;           // nnz(L) + nnz(U)
};

/// Timing/fill record for one factorization; consumed by the step recycler.
struct FactorStats {
    double elapsed_seconds = 0.0;
    index_t fill_nnz = 0;
    index_t n = 0;
};

/// Factors A with the given elimination order (column permutation).
/// Rows pivot within each column: the diagonal candidate is kept unless
/// its magnitude falls below pivot_tol times the column maximum.
/// Throws SingularMatrixError when no nonzero pivot exists at some step.
LuFactors sparse_lu(const CsrMatrix& A, const std::vector<index_t>& ordering,
                    double pivot_tol = 0.1);

/// Solves A x = b for the A that produced F.
DenseVector lu_solve(const LuFactors& F, const DenseVector& b);

/// Factors each diagonal block independently (ordering computed per block).
/// A singular block is reported with its position in the list.
std::vector<LuFactors> block_diag_lu(const std::vector<CsrMatrix>& blocks,
                                     double pivot_tol = 0.1);

} // namespace saddle

#endif // SADDLE_SPARSE_LU_HPP
