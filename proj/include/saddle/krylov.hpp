/// @file krylov.hpp
/// @brief Flexible GMRES and preconditioned CG.

#ifndef SADDLE_KRYLOV_HPP
#define SADDLE_KRYLOV_HPP

#include "saddle/csr_matrix.hpp"
#include "saddle/types.hpp"

#include <functional>
#include <vector>

namespace saddle {

/// Action of a square operator on a vector. The apply callback must be
/// deterministic for fixed state and safe for shared read-only use.
struct LinearOperator {
    index_t n = 0;
    std::function<DenseVector(const DenseVector&)> apply;

    static LinearOperator from_matrix(const CsrMatrix& A);
    static LinearOperator identity(index_t n);
};

struct SolveReport {
    index_t iterations = 0;
    std::vector<double> residual_history; // includes the initial residual
    bool converged = false;
    double final_relative_residual = 0.0;
    // set when the true residual disagrees with the recurrence residual by
    // more than 10x the requested tolerance
    bool true_residual_warning = false;
};

/// Right-preconditioned flexible GMRES without restart. The preconditioner
/// may change between iterations (inner iterative solves are fine).
/// Convergence is declared on the Arnoldi recurrence residual relative to
/// the initial residual; a final true-residual check sets
/// true_residual_warning on a >10x discrepancy. Breakdown (Hessenberg
/// subdiagonal < 1e-300 before convergence) throws SolverError.
std::pair<DenseVector, SolveReport> fgmres(const LinearOperator& op,
                                           const LinearOperator& precond,
                                           const DenseVector& b,
                                           const DenseVector& x0,
                                           double rel_tol,
                                           index_t max_iter = 200);

/// Preconditioned conjugate gradients for SPD (or semidefinite on the
/// solve subspace) operators. Euclidean-norm residual stopping. Throws
/// SolverError when pᵀAp ≤ 0 reveals indefiniteness. The optional
/// per-iteration observer receives the current iterate (used by tests to
/// monitor the A-norm error).
std::pair<DenseVector, SolveReport> pcg(
    const LinearOperator& op, const LinearOperator& precond,
    const DenseVector& b, const DenseVector& x0, double rel_tol,
    index_t max_iter,
    const std::function<void(const DenseVector&)>& on_iterate = nullptr);

} // namespace saddle

#endif // SADDLE_KRYLOV_HPP
