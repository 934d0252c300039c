#pragma once

#include "satbody/linalg.hpp"

namespace satbody {

/// min c.x  subject to  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0.
/// Either constraint block may be empty (0 rows).
struct LpProblem {
    Vector c;
    Matrix a_eq;
    Vector b_eq;
    Matrix a_ub;
    Vector b_ub;
};

enum class LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit, // solver failure, reported distinctly from infeasibility
};

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    double value = 0.0;
    Vector x;
};

/// Dense two-phase tableau simplex with Bland's rule (anti-cycling,
/// deterministic). Intended for the small deterministic programs this
/// project generates, not as a general-purpose solver.
LpSolution solve_lp(const LpProblem& problem, double feas_tol = 1e-9);

} // namespace satbody
