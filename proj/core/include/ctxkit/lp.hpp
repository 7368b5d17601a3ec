#pragma once

#include <string>
#include <vector>

namespace ctxkit {

/// Standard-form linear program:
///   maximize c.x  subject to  A_ub.x <= b_ub,  A_eq.x = b_eq,  x >= 0.
struct LpProblem {
    std::vector<double> objective;                 // c
    std::vector<std::vector<double>> ineq_matrix;  // A_ub, row major
    std::vector<double> ineq_rhs;                  // b_ub
    std::vector<std::vector<double>> eq_matrix;    // A_eq
    std::vector<double> eq_rhs;                    // b_eq
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective_value = 0.0;
    std::vector<double> solution;  // structural variables only
    int iterations = 0;            // simplex pivots, both phases
};

const char* to_string(LpStatus status);

/// Dense two-phase simplex with Bland's rule. Equality constraints are
/// handled natively through phase-1 artificials. Deterministic for a fixed
/// input. Throws std::invalid_argument on dimension mismatches or
/// non-finite coefficients.
LpSolution solve_max(const LpProblem& problem, double tol = 1e-9);

}  // namespace ctxkit
