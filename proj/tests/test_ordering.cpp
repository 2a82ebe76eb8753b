#include <doctest.h>

#include "saddle/csr_matrix.hpp"
#include "saddle/errors.hpp"
#include "saddle/ordering.hpp"
#include "saddle/sparse_lu.hpp"

#include "support/symbolic_oracle.hpp"

#include <algorithm>
#include <set>
#include <vector>

using saddle::CsrMatrix;
using saddle::index_t;

namespace {

bool is_permutation(const std::vector<index_t>& p, index_t n) {
    if (static_cast<index_t>(p.size()) != n) return false;
    std::set<index_t> seen(p.begin(), p.end());
    return static_cast<index_t>(seen.size()) == n && *seen.begin() == 0 &&
           *seen.rbegin() == n - 1;
}

CsrMatrix tridiagonal(index_t n) {
    std::vector<std::tuple<index_t, index_t, double>> trips;
    for (index_t i = 0; i < n; ++i) {
        trips.emplace_back(i, i, 2.0);
        if (i > 0) trips.emplace_back(i, i - 1, -1.0);
        if (i + 1 < n) trips.emplace_back(i, i + 1, -1.0);
    }
    return CsrMatrix::from_triplets(n, n, std::move(trips));
}

} // namespace

TEST_CASE("amd_order: identity pattern gives a permutation with fill n") {
    const auto I = CsrMatrix::identity(9);
    const auto p = saddle::amd_order(I);
    REQUIRE(is_permutation(p, 9));
    const auto F = saddle::sparse_lu(I, p);
    CHECK(F.fill_nnz == 9);
    CHECK(F.L.nnz() == 0);
    CHECK(F.U.nnz() == 9);
}

TEST_CASE("amd_order: tridiagonal has no fill under the returned order") {
    const auto A = tridiagonal(40);
    const auto p = saddle::amd_order(A);
    REQUIRE(is_permutation(p, 40));
    CHECK(testsupport::symbolic_fill(A, p) == A.nnz());
    // natural order is also fill-free on a tridiagonal matrix
    CHECK(testsupport::symbolic_fill(A, saddle::natural_order(40)) == A.nnz());
}

TEST_CASE("amd_order: 32x32 grid Laplacian fills less than natural order") {
    const auto A = testsupport::grid_laplacian(32, 32);
    const auto p = saddle::amd_order(A);
    REQUIRE(is_permutation(p, 1024));
    const auto fill_amd = testsupport::symbolic_fill(A, p);
    const auto fill_nat = testsupport::symbolic_fill(A, saddle::natural_order(1024));
    CHECK(fill_amd < fill_nat);
}

TEST_CASE("amd_order: symbolic oracle agrees with actual factorization fill") {
    // SPD and diagonally dominant, so threshold pivoting keeps the
    // structural diagonal and numeric fill equals symbolic fill.
    const auto A = testsupport::grid_laplacian(8, 8);
    const auto p = saddle::amd_order(A);
    const auto F = saddle::sparse_lu(A, p);
    CHECK(F.fill_nnz == testsupport::symbolic_fill(A, p));
}

TEST_CASE("amd_order: rejects non-square input") {
    const auto A = CsrMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
    CHECK_THROWS_AS(saddle::amd_order(A), saddle::DimensionError);
}

TEST_CASE("amd_order: deterministic across calls") {
    const auto A = testsupport::grid_laplacian(10, 7);
    CHECK(saddle::amd_order(A) == saddle::amd_order(A));
}

TEST_CASE("amd_order: unsymmetric pattern is symmetrized first") {
    // strictly upper bidiagonal: symmetrization makes it tridiagonal
    std::vector<std::tuple<index_t, index_t, double>> trips;
    for (index_t i = 0; i < 12; ++i) {
        trips.emplace_back(i, i, 1.0);
        if (i + 1 < 12) trips.emplace_back(i, i + 1, 1.0);
    }
    const auto A = CsrMatrix::from_triplets(12, 12, std::move(trips));
    const auto p = saddle::amd_order(A);
    CHECK(is_permutation(p, 12));
}
