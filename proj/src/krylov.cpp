#include "saddle/krylov.hpp"

#include "saddle/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace saddle {

LinearOperator LinearOperator::from_matrix(const CsrMatrix& A) {
    if (A.nrows != A.ncols)
        throw DimensionError("LinearOperator::from_matrix: square matrices only");
    auto held = std::make_shared<CsrMatrix>(A);
    return {A.nrows, [held](const DenseVector& x) { return spmv(*held, x); }};
}

LinearOperator LinearOperator::identity(index_t n) {
    return {n, [](const DenseVector& x) { return x; }};
}

std::pair<DenseVector, SolveReport> fgmres(const LinearOperator& op,
                                           const LinearOperator& precond,
                                           const DenseVector& b,
                                           const DenseVector& x0,
                                           double rel_tol,
                                           index_t max_iter) {
    const index_t n = op.n;
    if (static_cast<index_t>(b.size()) != n || static_cast<index_t>(x0.size()) != n ||
        precond.n != n)
        throw DimensionError("fgmres: operand dimensions disagree");
    if (rel_tol <= 0.0) throw std::invalid_argument("fgmres: rel_tol must be positive");

    SolveReport report;
    DenseVector r = op.apply(x0);
    scal(-1.0, r);
    axpy(1.0, b, r); // r = b - A x0
    const double beta = nrm2(r);
    report.residual_history.push_back(beta);
    if (beta == 0.0) {
        report.converged = true;
        return {x0, report};
    }

    const std::size_t m = static_cast<std::size_t>(max_iter);
    std::vector<DenseVector> V; // orthonormal basis
    std::vector<DenseVector> Z; // preconditioned directions (flexible)
    V.reserve(m + 1);
    Z.reserve(m);
    V.push_back(r);
    scal(1.0 / beta, V[0]);

    // Hessenberg columns after Givens rotations, plus rotation parameters.
    std::vector<std::vector<double>> Hcols;
    std::vector<double> cs, sn;
    std::vector<double> g{beta};
    Hcols.reserve(m);

    const double dgks_eta = 1.0 / std::sqrt(2.0);
    bool converged = false;
    bool breakdown = false;
    std::size_t j = 0;

    while (j < m) {
        Z.push_back(precond.apply(V[j]));
        DenseVector w = op.apply(Z[j]);

        // modified Gram-Schmidt with a single DGKS correction pass
        std::vector<double> h(j + 2, 0.0);
        const double w_norm_before = nrm2(w);
        for (std::size_t i = 0; i <= j; ++i) {
            const double hij = dot(V[i], w);
            h[i] = hij;
            axpy(-hij, V[i], w);
        }
        if (nrm2(w) < dgks_eta * w_norm_before) {
            for (std::size_t i = 0; i <= j; ++i) {
                const double corr = dot(V[i], w);
                h[i] += corr;
                axpy(-corr, V[i], w);
            }
        }
        const double hj1 = nrm2(w);
        h[j + 1] = hj1;

        // apply accumulated rotations to the new column
        for (std::size_t i = 0; i < j; ++i) {
            const double t = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = t;
        }
        const double denom = std::hypot(h[j], h[j + 1]);
        // a vanished column cannot reduce the residual and would make the
        // triangular solve divide by zero (possible only for singular op)
        if (denom < 1e-300)
            throw SolverError("fgmres: breakdown, Hessenberg column vanished");
        const double c = h[j] / denom;
        const double s = h[j + 1] / denom;
        cs.push_back(c);
        sn.push_back(s);
        h[j] = denom;
        h[j + 1] = 0.0;
        g.push_back(-s * g[j]);
        g[j] = c * g[j];
        Hcols.push_back(std::move(h));

        const double res = std::fabs(g[j + 1]);
        report.residual_history.push_back(res);
        ++j;

        if (res <= rel_tol * beta) {
            converged = true;
            break;
        }
        if (hj1 < 1e-300) {
            breakdown = true;
            break;
        }
        V.push_back(w);
        scal(1.0 / hj1, V[j]);
    }

    if (breakdown && !converged)
        throw SolverError("fgmres: Arnoldi breakdown before convergence");

    // y = argmin ||beta e1 - H y||, from the rotated triangular system
    DenseVector y(j, 0.0);
    for (std::size_t i = j; i-- > 0;) {
        double s = g[i];
        for (std::size_t k = i + 1; k < j; ++k) s -= Hcols[k][i] * y[k];
        y[i] = s / Hcols[i][i];
    }
    DenseVector x = x0;
    for (std::size_t k = 0; k < j; ++k) axpy(y[k], Z[k], x);

    report.iterations = static_cast<index_t>(j);
    report.converged = converged;

    DenseVector r_true = op.apply(x);
    scal(-1.0, r_true);
    axpy(1.0, b, r_true);
    report.final_relative_residual = nrm2(r_true) / beta;
    if (converged && report.final_relative_residual > 10.0 * rel_tol)
        report.true_residual_warning = true;

    return {x, report};
}

std::pair<DenseVector, SolveReport> pcg(
    const LinearOperator& op, const LinearOperator& precond,
    const DenseVector& b, const DenseVector& x0, double rel_tol,
    index_t max_iter,
    const std::function<void(const DenseVector&)>& on_iterate) {
    const index_t n = op.n;
    if (static_cast<index_t>(b.size()) != n || static_cast<index_t>(x0.size()) != n ||
        precond.n != n)
        throw DimensionError("pcg: operand dimensions disagree");
    if (rel_tol <= 0.0) throw std::invalid_argument("pcg: rel_tol must be positive");

    SolveReport report;
    DenseVector x = x0;
    DenseVector r = op.apply(x);
    scal(-1.0, r);
    axpy(1.0, b, r);
    const double r0_norm = nrm2(r);
    report.residual_history.push_back(r0_norm);
    if (r0_norm == 0.0) {
        report.converged = true;
        return {x, report};
    }

    DenseVector z = precond.apply(r);
    DenseVector p = z;
    double rz = dot(r, z);

    for (index_t it = 0; it < max_iter; ++it) {
        const DenseVector q = op.apply(p);
        const double pq = dot(p, q);
        if (pq <= 0.0)
            throw SolverError("pcg: operator not positive definite on the Krylov space");
        const double alpha = rz / pq;
        axpy(alpha, p, x);
        axpy(-alpha, q, r);
        if (on_iterate) on_iterate(x);

        const double rn = nrm2(r);
        report.residual_history.push_back(rn);
        report.iterations = it + 1;
        if (rn <= rel_tol * r0_norm) {
            report.converged = true;
            break;
        }

        z = precond.apply(r);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }

    report.final_relative_residual =
        report.residual_history.back() / r0_norm;
    return {x, report};
}

} // namespace saddle
