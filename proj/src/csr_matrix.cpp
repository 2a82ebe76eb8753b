#include "saddle/csr_matrix.hpp"

#include "saddle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace saddle {

CsrMatrix::CsrMatrix(index_t rows, index_t cols,
                     std::vector<index_t> offsets,
                     std::vector<index_t> cols_idx,
                     std::vector<double> vals)
    : nrows(rows), ncols(cols),
      row_offsets(std::move(offsets)),
      col_indices(std::move(cols_idx)),
      values(std::move(vals)) {
    validate();
}

void CsrMatrix::validate() const {
    if (nrows < 0 || ncols < 0)
        throw std::invalid_argument("CsrMatrix: negative dimension");
    if (static_cast<index_t>(row_offsets.size()) != nrows + 1)
        throw std::invalid_argument("CsrMatrix: row_offsets length must be nrows+1");
    if (row_offsets.front() != 0)
        throw std::invalid_argument("CsrMatrix: row_offsets[0] must be 0");
    if (row_offsets.back() != static_cast<index_t>(col_indices.size()))
        throw std::invalid_argument("CsrMatrix: row_offsets[nrows] must equal nnz");
    if (col_indices.size() != values.size())
        throw std::invalid_argument("CsrMatrix: col_indices/values length mismatch");
    for (index_t i = 0; i < nrows; ++i) {
        if (row_offsets[i] > row_offsets[i + 1])
            throw std::invalid_argument("CsrMatrix: row_offsets not monotone at row " +
                                        std::to_string(i));
        for (index_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
            const index_t c = col_indices[k];
            if (c < 0 || c >= ncols)
                throw std::invalid_argument("CsrMatrix: column index out of range in row " +
                                            std::to_string(i));
            if (k > row_offsets[i] && col_indices[k - 1] >= c)
                throw std::invalid_argument(
                    "CsrMatrix: columns not strictly increasing in row " + std::to_string(i));
        }
    }
}

CsrMatrix CsrMatrix::from_triplets(
    index_t rows, index_t cols,
    std::vector<std::tuple<index_t, index_t, double>> triplets) {
    for (const auto& [i, j, v] : triplets) {
        (void)v;
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw std::invalid_argument("from_triplets: entry out of range");
    }
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });

    CsrMatrix A;
    A.nrows = rows;
    A.ncols = cols;
    A.row_offsets.assign(static_cast<std::size_t>(rows) + 1, 0);
    A.col_indices.reserve(triplets.size());
    A.values.reserve(triplets.size());

    std::size_t k = 0;
    for (index_t i = 0; i < rows; ++i) {
        while (k < triplets.size() && std::get<0>(triplets[k]) == i) {
            const index_t j = std::get<1>(triplets[k]);
            double v = std::get<2>(triplets[k]);
            ++k;
            // sum duplicates
            while (k < triplets.size() && std::get<0>(triplets[k]) == i &&
                   std::get<1>(triplets[k]) == j) {
                v += std::get<2>(triplets[k]);
                ++k;
            }
            A.col_indices.push_back(j);
            A.values.push_back(v);
        }
        A.row_offsets[static_cast<std::size_t>(i) + 1] =
            static_cast<index_t>(A.col_indices.size());
    }
    return A;
}

CsrMatrix CsrMatrix::diagonal(const DenseVector& d) {
    CsrMatrix A;
    A.nrows = A.ncols = static_cast<index_t>(d.size());
    A.row_offsets.resize(d.size() + 1);
    A.col_indices.resize(d.size());
    A.values = d;
    for (std::size_t i = 0; i <= d.size(); ++i) A.row_offsets[i] = static_cast<index_t>(i);
    for (std::size_t i = 0; i < d.size(); ++i) A.col_indices[i] = static_cast<index_t>(i);
    return A;
}

CsrMatrix CsrMatrix::identity(index_t n) {
    return diagonal(DenseVector(static_cast<std::size_t>(n), 1.0));
}

double CsrMatrix::at(index_t i, index_t j) const {
    const auto begin = col_indices.begin() + row_offsets[i];
    const auto end = col_indices.begin() + row_offsets[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return values[static_cast<std::size_t>(it - col_indices.begin())];
}

void spmv(const CsrMatrix& A, const DenseVector& x, DenseVector& y) {
    if (A.ncols != static_cast<index_t>(x.size()))
        throw DimensionError("spmv: A.ncols != len(x)");
    y.assign(static_cast<std::size_t>(A.nrows), 0.0);
    const index_t* off = A.row_offsets.data();
    const index_t* col = A.col_indices.data();
    const double* val = A.values.data();
    const double* xp = x.data();
    for (index_t i = 0; i < A.nrows; ++i) {
        double s = 0.0;
        for (index_t k = off[i]; k < off[i + 1]; ++k) s += val[k] * xp[col[k]];
        y[static_cast<std::size_t>(i)] = s;
    }
}

DenseVector spmv(const CsrMatrix& A, const DenseVector& x) {
    DenseVector y;
    spmv(A, x, y);
    return y;
}

void spmv_add(const CsrMatrix& A, const DenseVector& x, DenseVector& y) {
    if (A.ncols != static_cast<index_t>(x.size()))
        throw DimensionError("spmv_add: A.ncols != len(x)");
    if (A.nrows != static_cast<index_t>(y.size()))
        throw DimensionError("spmv_add: A.nrows != len(y)");
    const index_t* off = A.row_offsets.data();
    const index_t* col = A.col_indices.data();
    const double* val = A.values.data();
    for (index_t i = 0; i < A.nrows; ++i) {
        double s = 0.0;
        for (index_t k = off[i]; k < off[i + 1]; ++k) s += val[k] * x[static_cast<std::size_t>(col[k])];
        y[static_cast<std::size_t>(i)] += s;
    }
}

CsrMatrix transpose(const CsrMatrix& A) {
    CsrMatrix T;
    T.nrows = A.ncols;
    T.ncols = A.nrows;
    T.row_offsets.assign(static_cast<std::size_t>(A.ncols) + 1, 0);
    T.col_indices.resize(A.values.size());
    T.values.resize(A.values.size());

    for (index_t k = 0; k < A.nnz(); ++k)
        ++T.row_offsets[static_cast<std::size_t>(A.col_indices[static_cast<std::size_t>(k)]) + 1];
    for (index_t j = 0; j < A.ncols; ++j)
        T.row_offsets[static_cast<std::size_t>(j) + 1] += T.row_offsets[static_cast<std::size_t>(j)];

    std::vector<index_t> next(T.row_offsets.begin(), T.row_offsets.end() - 1);
    for (index_t i = 0; i < A.nrows; ++i) {
        for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
            const index_t j = A.col_indices[static_cast<std::size_t>(k)];
            const index_t p = next[static_cast<std::size_t>(j)]++;
            T.col_indices[static_cast<std::size_t>(p)] = i;
            T.values[static_cast<std::size_t>(p)] = A.values[static_cast<std::size_t>(k)];
        }
    }
    // rows of T are filled in increasing source-row order, so columns are sorted
    return T;
}

CsrMatrix extract_block(const CsrMatrix& A,
                        index_t row_begin, index_t row_end,
                        index_t col_begin, index_t col_end) {
    if (row_begin < 0 || row_end < row_begin || row_end > A.nrows ||
        col_begin < 0 || col_end < col_begin || col_end > A.ncols)
        throw std::out_of_range("extract_block: range out of bounds");

    CsrMatrix B;
    B.nrows = row_end - row_begin;
    B.ncols = col_end - col_begin;
    B.row_offsets.assign(static_cast<std::size_t>(B.nrows) + 1, 0);
    for (index_t i = row_begin; i < row_end; ++i) {
        for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
            const index_t j = A.col_indices[static_cast<std::size_t>(k)];
            if (j >= col_begin && j < col_end) {
                B.col_indices.push_back(j - col_begin);
                B.values.push_back(A.values[static_cast<std::size_t>(k)]);
            }
        }
        B.row_offsets[static_cast<std::size_t>(i - row_begin) + 1] =
            static_cast<index_t>(B.col_indices.size());
    }
    return B;
}

double max_abs(const CsrMatrix& A) {
    double m = 0.0;
    for (double v : A.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace saddle
