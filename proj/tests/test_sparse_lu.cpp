#include <doctest.h>

#include "saddle/csr_matrix.hpp"
#include "saddle/errors.hpp"
#include "saddle/ordering.hpp"
#include "saddle/sparse_lu.hpp"

#include "support/dense_oracle.hpp"
#include "support/test_rng.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

using saddle::CsrMatrix;
using saddle::DenseVector;
using saddle::index_t;
using saddle::LuFactors;

namespace {

// dense reconstruction of P_r A P_c - L U, max abs entry
double reconstruction_error(const CsrMatrix& A, const LuFactors& F) {
    const auto n = static_cast<std::size_t>(F.n);
    const auto Ld = testsupport::to_dense(F.L);
    const auto Ud = testsupport::to_dense(F.U);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double lu = Ud(i, j); // unit diagonal of L times U row i
            for (std::size_t k = 0; k < n; ++k) lu += Ld(i, k) * Ud(k, j);
            const double paq = A.at(F.row_perm[i], F.col_perm[j]);
            err = std::max(err, std::fabs(paq - lu));
        }
    }
    return err;
}

CsrMatrix random_diag_dominant(index_t n, double fill, std::mt19937_64& rng) {
    std::vector<std::tuple<index_t, index_t, double>> trips;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<double> rowsum(static_cast<std::size_t>(n), 0.0);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (coin(rng) < fill) {
                const double v = testsupport::uniform(rng);
                trips.emplace_back(i, j, v);
                rowsum[static_cast<std::size_t>(i)] += std::fabs(v);
            }
        }
    for (index_t i = 0; i < n; ++i)
        trips.emplace_back(i, i, rowsum[static_cast<std::size_t>(i)] + 1.0);
    return CsrMatrix::from_triplets(n, n, std::move(trips));
}

CsrMatrix random_spd(index_t n, std::mt19937_64& rng) {
    // M = R^T R + n I via dense product, then sparsified into CSR
    testsupport::DenseMatrix R(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (auto& v : R.a) v = testsupport::uniform(rng);
    std::vector<std::tuple<index_t, index_t, double>> trips;
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            double s = (i == j) ? static_cast<double>(n) : 0.0;
            for (index_t k = 0; k < n; ++k)
                s += R(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) *
                     R(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
            trips.emplace_back(i, j, s);
        }
    return CsrMatrix::from_triplets(n, n, std::move(trips));
}

} // namespace

TEST_CASE("sparse_lu: diag(4,9) factors trivially") {
    const auto A = CsrMatrix::diagonal({4.0, 9.0});
    const auto F = saddle::sparse_lu(A, saddle::natural_order(2));
    CHECK(F.L.nnz() == 0);
    CHECK(F.U.at(0, 0) == 4.0);
    CHECK(F.U.at(1, 1) == 9.0);
    CHECK(F.row_perm == std::vector<index_t>{0, 1});
    CHECK(F.col_perm == std::vector<index_t>{0, 1});
    CHECK(reconstruction_error(A, F) == 0.0);
}

TEST_CASE("sparse_lu: antidiagonal succeeds via row pivoting") {
    const auto A = CsrMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
    const auto F = saddle::sparse_lu(A, saddle::natural_order(2));
    CHECK(F.row_perm == std::vector<index_t>{1, 0});
    CHECK(F.L.nnz() == 0);
    CHECK(reconstruction_error(A, F) == 0.0);
    const auto x = saddle::lu_solve(F, {3.0, 5.0});
    CHECK(x[0] == 5.0);
    CHECK(x[1] == 3.0);
}

TEST_CASE("sparse_lu: random diagonally dominant 50x50 vs dense oracle") {
    auto rng = testsupport::make_rng(31);
    const auto A = random_diag_dominant(50, 0.15, rng);
    const auto F = saddle::sparse_lu(A, saddle::amd_order(A));

    CHECK(reconstruction_error(A, F) <= 1e-10 * saddle::max_abs(A));

    DenseVector b(50);
    for (double& v : b) v = testsupport::uniform(rng);
    const auto x = saddle::lu_solve(F, b);
    const auto x_ref = testsupport::solve_ge(testsupport::to_dense(A), b);
    for (std::size_t i = 0; i < 50; ++i) {
        const double scale = std::max(1.0, std::fabs(x_ref[i]));
        CHECK(std::fabs(x[i] - x_ref[i]) <= 1e-10 * scale);
    }
}

TEST_CASE("sparse_lu: reconstruction invariant over random instances") {
    auto rng = testsupport::make_rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const index_t n = 5 + static_cast<index_t>(rng() % 30);
        const auto A = random_diag_dominant(n, 0.2, rng);
        const auto F = saddle::sparse_lu(A, saddle::amd_order(A));
        CHECK(reconstruction_error(A, F) <= 1e-10 * saddle::max_abs(A));
    }
}

TEST_CASE("sparse_lu: determinism, identical inputs give identical factors") {
    auto rng = testsupport::make_rng(41);
    const auto A = random_diag_dominant(30, 0.2, rng);
    const auto p = saddle::amd_order(A);
    const auto F1 = saddle::sparse_lu(A, p);
    const auto F2 = saddle::sparse_lu(A, p);
    CHECK(F1.L.values == F2.L.values);
    CHECK(F1.U.values == F2.U.values);
    CHECK(F1.L.col_indices == F2.L.col_indices);
    CHECK(F1.row_perm == F2.row_perm);
}

TEST_CASE("sparse_lu: singular matrix raises with the elimination step") {
    // second column identically zero
    const auto A = CsrMatrix::from_triplets(3, 3, {{0, 0, 1.0}, {1, 0, 2.0}, {2, 2, 3.0}});
    try {
        saddle::sparse_lu(A, saddle::natural_order(3));
        FAIL("expected SingularMatrixError");
    } catch (const saddle::SingularMatrixError& e) {
        CHECK(e.step() == 1);
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }
}

TEST_CASE("sparse_lu: threshold pivoting keeps an acceptable diagonal") {
    // diagonal 1.0 vs off-diagonal 5.0: below default threshold 0.1*5, so
    // rows must swap; with pivot_tol small enough the diagonal stays.
    const auto A = CsrMatrix::from_triplets(
        2, 2, {{0, 0, 0.4}, {0, 1, 1.0}, {1, 0, 5.0}, {1, 1, 1.0}});
    const auto F_strict = saddle::sparse_lu(A, saddle::natural_order(2), 0.5);
    CHECK(F_strict.row_perm == std::vector<index_t>{1, 0});
    const auto F_lax = saddle::sparse_lu(A, saddle::natural_order(2), 0.05);
    CHECK(F_lax.row_perm == std::vector<index_t>{0, 1});
    CHECK(reconstruction_error(A, F_strict) <= 1e-10 * saddle::max_abs(A));
    CHECK(reconstruction_error(A, F_lax) <= 1e-10 * saddle::max_abs(A));
}

TEST_CASE("sparse_lu: input validation") {
    const auto A = CsrMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
    CHECK_THROWS_AS(saddle::sparse_lu(A, saddle::natural_order(2)), saddle::DimensionError);
    const auto B = CsrMatrix::identity(3);
    CHECK_THROWS_AS(saddle::sparse_lu(B, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(saddle::sparse_lu(B, {0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(saddle::sparse_lu(B, saddle::natural_order(3), 2.0), std::invalid_argument);
}

TEST_CASE("lu_solve: identity returns b") {
    const auto F = saddle::sparse_lu(CsrMatrix::identity(4), saddle::natural_order(4));
    const DenseVector b{1.0, -2.0, 3.0, 0.5};
    CHECK(saddle::lu_solve(F, b) == b);
}

TEST_CASE("lu_solve: diag(2,4) with b=(2,4) gives (1,1)") {
    const auto F = saddle::sparse_lu(CsrMatrix::diagonal({2.0, 4.0}), saddle::natural_order(2));
    const auto x = saddle::lu_solve(F, {2.0, 4.0});
    CHECK(x[0] == 1.0);
    CHECK(x[1] == 1.0);
}

TEST_CASE("lu_solve: dimension mismatch") {
    const auto F = saddle::sparse_lu(CsrMatrix::identity(3), saddle::natural_order(3));
    CHECK_THROWS_AS(saddle::lu_solve(F, DenseVector{1.0, 2.0}), saddle::DimensionError);
}

TEST_CASE("lu_solve: residual contract on 100 well-conditioned instances") {
    auto rng = testsupport::make_rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const index_t n = 5 + static_cast<index_t>(rng() % 40);
        const auto A = random_diag_dominant(n, 0.25, rng);
        const auto F = saddle::sparse_lu(A, saddle::amd_order(A));
        DenseVector b(static_cast<std::size_t>(n));
        for (double& v : b) v = testsupport::uniform(rng);
        const auto x = saddle::lu_solve(F, b);

        auto r = spmv(A, x);
        saddle::axpy(-1.0, b, r); // r = Ax - b
        // one-norm of A
        DenseVector colsum(static_cast<std::size_t>(n), 0.0);
        for (index_t i = 0; i < n; ++i)
            for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
                colsum[static_cast<std::size_t>(A.col_indices[static_cast<std::size_t>(k)])] +=
                    std::fabs(A.values[static_cast<std::size_t>(k)]);
        const double norm1 = *std::max_element(colsum.begin(), colsum.end());
        CHECK(saddle::nrm2(r) <= 1e-9 * (norm1 * saddle::nrm2(x) + saddle::nrm2(b)));
    }
}

TEST_CASE("block_diag_lu: two scalar blocks") {
    const auto F = saddle::block_diag_lu({CsrMatrix::diagonal({1.0}), CsrMatrix::diagonal({2.0})});
    REQUIRE(F.size() == 2);
    CHECK(F[0].U.at(0, 0) == 1.0);
    CHECK(F[1].U.at(0, 0) == 2.0);
}

TEST_CASE("block_diag_lu: identity blocks") {
    const auto F = saddle::block_diag_lu({CsrMatrix::identity(3), CsrMatrix::identity(3)});
    REQUIRE(F.size() == 2);
    for (const auto& f : F) {
        CHECK(f.L.nnz() == 0);
        CHECK(f.U.nnz() == 3);
        for (index_t i = 0; i < 3; ++i) CHECK(f.U.at(i, i) == 1.0);
    }
}

TEST_CASE("block_diag_lu: random SPD blocks solve against dense oracle") {
    auto rng = testsupport::make_rng(47);
    const auto B1 = random_spd(20, rng);
    const auto B2 = random_spd(20, rng);
    const auto F = saddle::block_diag_lu({B1, B2});
    REQUIRE(F.size() == 2);
    index_t total_fill = 0;
    for (const auto& f : F) total_fill += f.fill_nnz;
    CHECK(total_fill == F[0].fill_nnz + F[1].fill_nnz);

    const CsrMatrix* blocks[2] = {&B1, &B2};
    for (int bi = 0; bi < 2; ++bi) {
        DenseVector b(20);
        for (double& v : b) v = testsupport::uniform(rng);
        const auto x = saddle::lu_solve(F[static_cast<std::size_t>(bi)], b);
        const auto x_ref = testsupport::solve_ge(testsupport::to_dense(*blocks[bi]), b);
        for (std::size_t i = 0; i < 20; ++i) {
            const double scale = std::max(1.0, std::fabs(x_ref[i]));
            CHECK(std::fabs(x[i] - x_ref[i]) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("block_diag_lu: singular block reported with its index") {
    CsrMatrix Z;
    Z.nrows = Z.ncols = 2;
    Z.row_offsets = {0, 0, 0};
    try {
        saddle::block_diag_lu({CsrMatrix::identity(2), Z});
        FAIL("expected SingularMatrixError");
    } catch (const saddle::SingularMatrixError& e) {
        CHECK(std::string(e.what()).find("block 1") != std::string::npos);
    }
}
