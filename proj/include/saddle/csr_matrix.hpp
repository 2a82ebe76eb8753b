/// @file csr_matrix.hpp
/// @brief Compressed sparse row matrix and the kernels built on it.

#ifndef SADDLE_CSR_MATRIX_HPP
#define SADDLE_CSR_MATRIX_HPP

#include "saddle/types.hpp"

#include <tuple>
#include <vector>

namespace saddle {

/// Sparse matrix in CSR format with owned storage.
///
/// Invariants (see validate()):
///  - row_offsets has length nrows+1, starts at 0, ends at nnz, monotone;
///  - column indices strictly increasing within each row and in [0, ncols);
///  - no duplicate entries (duplicates are summed at construction).
///
/// Instances are treated as immutable after construction and are safe to
/// share read-only across threads.
struct CsrMatrix {
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<index_t> row_offsets{0};
    std::vector<index_t> col_indices;
    std::vector<double> values;

    CsrMatrix() = default;
    CsrMatrix(index_t rows, index_t cols,
              std::vector<index_t> offsets,
              std::vector<index_t> cols_idx,
              std::vector<double> vals);

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    /// Throws std::invalid_argument when a CSR invariant is broken.
    void validate() const;

    /// Builds from (row, col, value) triplets; duplicates are summed
    /// (standard FEM assembly semantics).
    static CsrMatrix from_triplets(index_t rows, index_t cols,
                                   std::vector<std::tuple<index_t, index_t, double>> triplets);

    /// Builds a square diagonal matrix.
    static CsrMatrix diagonal(const DenseVector& d);

    /// Builds the n-by-n identity.
    static CsrMatrix identity(index_t n);

    /// Value at (i, j), 0 if not stored. Binary search within the row.
    double at(index_t i, index_t j) const;
};

/// y = A*x. Row accumulation is left-to-right in index order.
void spmv(const CsrMatrix& A, const DenseVector& x, DenseVector& y);
DenseVector spmv(const CsrMatrix& A, const DenseVector& x);

/// y += A*x
void spmv_add(const CsrMatrix& A, const DenseVector& x, DenseVector& y);

CsrMatrix transpose(const CsrMatrix& A);

/// Submatrix A[row_begin:row_end, col_begin:col_end), reindexed from zero.
CsrMatrix extract_block(const CsrMatrix& A,
                        index_t row_begin, index_t row_end,
                        index_t col_begin, index_t col_end);

/// max |A_ij| over stored entries (0 for an empty matrix).
double max_abs(const CsrMatrix& A);

} // namespace saddle

#endif // SADDLE_CSR_MATRIX_HPP
