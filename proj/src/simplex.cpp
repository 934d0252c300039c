#include "satbody/simplex.hpp"

#include <cmath>
#include <vector>

namespace satbody {

namespace {

constexpr double kPivotTol = 1e-11;

// Full-tableau simplex on min c.x, T x = b, x >= 0 with the given starting
// basis (one basic column per row, identity in those columns).
// Returns false on iteration limit.
bool run_simplex(Matrix& t, std::vector<Index>& basis, const Vector& cost,
                 Index ncols, long max_iter) {
    const Index nrows = t.rows() - 1;
    const Index rhs = t.cols() - 1;
    // Rebuild the reduced-cost row for the given cost vector.
    t.row(nrows).setZero();
    for (Index j = 0; j < ncols; ++j) t(nrows, j) = cost(j);
    for (Index i = 0; i < nrows; ++i)
        if (cost(basis[i]) != 0.0)
            t.row(nrows) -= cost(basis[i]) * t.row(i);

    for (long iter = 0; iter < max_iter; ++iter) {
        // Bland: entering column = smallest index with negative reduced cost.
        Index enter = -1;
        for (Index j = 0; j < ncols; ++j) {
            if (t(nrows, j) < -1e-9) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return true; // optimal

        // Ratio test; ties broken by smallest basis index (Bland).
        Index leave = -1;
        double best_ratio = 0.0;
        for (Index i = 0; i < nrows; ++i) {
            if (t(i, enter) > kPivotTol) {
                const double ratio = t(i, rhs) / t(i, enter);
                if (leave < 0 || ratio < best_ratio - 1e-12 ||
                    (std::fabs(ratio - best_ratio) <= 1e-12 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return true; // unbounded; caller inspects reduced costs

        t.row(leave) /= t(leave, enter);
        for (Index i = 0; i <= nrows; ++i) {
            if (i != leave && t(i, enter) != 0.0)
                t.row(i) -= t(i, enter) * t.row(leave);
        }
        basis[leave] = enter;
    }
    return false;
}

} // namespace

LpSolution solve_lp(const LpProblem& problem, double feas_tol) {
    const Index nx = problem.c.size();
    const Index n_eq = problem.a_eq.rows();
    const Index n_ub = problem.a_ub.rows();
    if (n_eq > 0 && problem.a_eq.cols() != nx)
        throw PreconditionError("solve_lp: a_eq column count mismatch");
    if (n_ub > 0 && problem.a_ub.cols() != nx)
        throw PreconditionError("solve_lp: a_ub column count mismatch");

    const Index nrows = n_eq + n_ub;
    const Index nslack = n_ub;
    const Index nart = nrows;
    const Index ncols = nx + nslack + nart;

    // Tableau: nrows constraint rows + 1 objective row; last column is RHS.
    Matrix t = Matrix::Zero(nrows + 1, ncols + 1);
    for (Index i = 0; i < n_eq; ++i) {
        t.block(i, 0, 1, nx) = problem.a_eq.row(i);
        t(i, ncols) = problem.b_eq(i);
    }
    for (Index i = 0; i < n_ub; ++i) {
        t.block(n_eq + i, 0, 1, nx) = problem.a_ub.row(i);
        t(n_eq + i, nx + i) = 1.0;
        t(n_eq + i, ncols) = problem.b_ub(i);
    }
    for (Index i = 0; i < nrows; ++i) {
        if (t(i, ncols) < 0.0) t.row(i) = -t.row(i);
        t(i, nx + nslack + i) = 1.0;
    }

    std::vector<Index> basis(nrows);
    for (Index i = 0; i < nrows; ++i) basis[i] = nx + nslack + i;

    const long max_iter = 2000 + 200 * static_cast<long>(nrows + ncols);

    // Phase 1: minimize the sum of artificials.
    Vector phase1_cost = Vector::Zero(ncols);
    for (Index j = nx + nslack; j < ncols; ++j) phase1_cost(j) = 1.0;
    if (!run_simplex(t, basis, phase1_cost, ncols, max_iter))
        return {LpStatus::IterationLimit, 0.0, Vector()};

    double art_sum = 0.0;
    for (Index i = 0; i < nrows; ++i)
        if (basis[i] >= nx + nslack) art_sum += t(i, ncols);
    const double scale = 1.0 + (nrows > 0 ? problem.b_eq.size() + problem.b_ub.size() : 0.0);
    if (art_sum > feas_tol * scale)
        return {LpStatus::Infeasible, 0.0, Vector()};

    // Drive residual artificials out of the basis where possible.
    for (Index i = 0; i < nrows; ++i) {
        if (basis[i] < nx + nslack) continue;
        Index pivot = -1;
        for (Index j = 0; j < nx + nslack; ++j) {
            if (std::fabs(t(i, j)) > kPivotTol) {
                pivot = j;
                break;
            }
        }
        if (pivot < 0) continue; // redundant row; artificial stays basic at 0
        t.row(i) /= t(i, pivot);
        for (Index r = 0; r <= nrows; ++r)
            if (r != i && t(r, pivot) != 0.0) t.row(r) -= t(r, pivot) * t.row(i);
        basis[i] = pivot;
    }

    // Phase 2 on the original costs; artificial columns are frozen by giving
    // them a prohibitive cost so Bland never selects them.
    Vector phase2_cost = Vector::Zero(ncols);
    phase2_cost.head(nx) = problem.c;
    for (Index i = 0; i < nrows; ++i) {
        if (basis[i] >= nx + nslack) {
            // Degenerate basic artificial at value 0: pin its column.
            t.row(i).setZero();
            t(i, basis[i]) = 1.0;
        }
    }
    if (!run_simplex(t, basis, phase2_cost, nx + nslack, max_iter))
        return {LpStatus::IterationLimit, 0.0, Vector()};

    // Detect unboundedness: a negative reduced cost whose column has no
    // positive entry.
    for (Index j = 0; j < nx + nslack; ++j) {
        if (t(nrows, j) < -1e-9) {
            bool has_positive = false;
            for (Index i = 0; i < nrows; ++i)
                if (t(i, j) > kPivotTol) has_positive = true;
            if (!has_positive) return {LpStatus::Unbounded, 0.0, Vector()};
        }
    }

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x = Vector::Zero(nx);
    for (Index i = 0; i < nrows; ++i)
        if (basis[i] < nx) sol.x(basis[i]) = t(i, ncols);
    sol.value = problem.c.dot(sol.x);
    return sol;
}

} // namespace satbody
