#include "ctxkit/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace ctxkit {

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

namespace {

void check_problem(const LpProblem& p) {
    const std::size_t n = p.objective.size();
    if (n == 0) throw std::invalid_argument("lp: empty objective");
    auto check_value = [](double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite coefficient");
    };
    for (double v : p.objective) check_value(v);
    if (p.ineq_matrix.size() != p.ineq_rhs.size())
        throw std::invalid_argument("lp: inequality rhs length mismatch");
    if (p.eq_matrix.size() != p.eq_rhs.size())
        throw std::invalid_argument("lp: equality rhs length mismatch");
    for (const auto& row : p.ineq_matrix) {
        if (row.size() != n) throw std::invalid_argument("lp: inequality row width mismatch");
        for (double v : row) check_value(v);
    }
    for (const auto& row : p.eq_matrix) {
        if (row.size() != n) throw std::invalid_argument("lp: equality row width mismatch");
        for (double v : row) check_value(v);
    }
    for (double v : p.ineq_rhs) check_value(v);
    for (double v : p.eq_rhs) check_value(v);
}

// Dense tableau over columns [structural | slacks | artificials], one row
// per constraint, plus a maintained reduced-cost row.
struct Tableau {
    std::size_t ncols = 0;
    std::vector<std::vector<double>> rows;  // each ncols wide
    std::vector<double> rhs;
    std::vector<int> basis;                 // basic column per row
    std::vector<double> cost;               // reduced-cost row
    double cost_rhs = 0.0;                  // current objective value
    int iterations = 0;

    void pivot(std::size_t row, std::size_t col) {
        auto& prow = rows[row];
        const double inv = 1.0 / prow[col];
        for (double& v : prow) v *= inv;
        rhs[row] *= inv;
        prow[col] = 1.0;  // keep the unit exact

        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == row) continue;
            const double factor = rows[i][col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= factor * prow[j];
            rows[i][col] = 0.0;
            rhs[i] -= factor * rhs[row];
        }
        const double cfactor = cost[col];
        if (cfactor != 0.0) {
            for (std::size_t j = 0; j < ncols; ++j) cost[j] -= cfactor * prow[j];
            cost[col] = 0.0;
            cost_rhs += cfactor * rhs[row];
        }
        basis[row] = static_cast<int>(col);
        ++iterations;
    }

    // Reduced costs for maximizing objective obj (length ncols).
    void price(const std::vector<double>& obj) {
        cost = obj;
        cost_rhs = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double cb = obj[static_cast<std::size_t>(basis[i])];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < ncols; ++j) cost[j] -= cb * rows[i][j];
            cost_rhs += cb * rhs[i];
        }
        for (std::size_t i = 0; i < rows.size(); ++i) cost[static_cast<std::size_t>(basis[i])] = 0.0;
    }

    // Bland: enter the smallest-index improving column; leave by minimum
    // ratio with ties broken toward the smallest basic index. `limit` caps
    // the candidate columns (used to exclude artificials in phase 2).
    // Returns false when no improving column remains (optimal), throws
    // nothing; unbounded is reported through the out-flag.
    bool iterate(std::size_t limit, double tol, bool& unbounded) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < limit; ++j) {
            if (cost[j] > tol) { enter = j; break; }
        }
        if (enter == ncols) { unbounded = false; return false; }

        std::size_t leave = rows.size();
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double a = rows[i][enter];
            if (a <= tol) continue;
            const double ratio = rhs[i] / a;
            if (leave == rows.size()) {
                best_ratio = ratio;
                leave = i;
                continue;
            }
            const double near = 1e-12 * (1.0 + std::fabs(best_ratio));
            if (ratio < best_ratio - near) {
                best_ratio = ratio;
                leave = i;
            } else if (ratio <= best_ratio + near && basis[i] < basis[leave]) {
                leave = i;
            }
        }
        if (leave == rows.size()) { unbounded = true; return false; }
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LpSolution solve_max(const LpProblem& p, double tol) {
    check_problem(p);
    if (!(tol > 0.0)) throw std::invalid_argument("lp: tolerance must be positive");

    const std::size_t n = p.objective.size();
    const std::size_t m1 = p.ineq_matrix.size();
    const std::size_t m2 = p.eq_matrix.size();
    const std::size_t m = m1 + m2;

    Tableau t;
    t.rows.assign(m, {});
    t.rhs.assign(m, 0.0);
    t.basis.assign(m, -1);

    // Structural + slack columns; artificials appended below as needed.
    const std::size_t nslack = m1;
    std::size_t ncols = n + nslack;
    std::vector<double> sign(m, 1.0);
    double bscale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const bool ineq = i < m1;
        const double b = ineq ? p.ineq_rhs[i] : p.eq_rhs[i - m1];
        bscale = std::max(bscale, std::fabs(b));
        if (b < 0.0) sign[i] = -1.0;
    }

    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const bool ineq = i < m1;
        if (ineq && sign[i] > 0.0) continue;  // slack can start basic
        needs_artificial.push_back(i);
    }
    const std::size_t nart = needs_artificial.size();
    t.ncols = ncols + nart;

    for (std::size_t i = 0; i < m; ++i) {
        const bool ineq = i < m1;
        auto& row = t.rows[i];
        row.assign(t.ncols, 0.0);
        const auto& src = ineq ? p.ineq_matrix[i] : p.eq_matrix[i - m1];
        for (std::size_t j = 0; j < n; ++j) row[j] = sign[i] * src[j];
        if (ineq) row[n + i] = sign[i];
        t.rhs[i] = sign[i] * (ineq ? p.ineq_rhs[i] : p.eq_rhs[i - m1]);
        if (ineq && sign[i] > 0.0) t.basis[i] = static_cast<int>(n + i);
    }
    for (std::size_t k = 0; k < nart; ++k) {
        const std::size_t i = needs_artificial[k];
        t.rows[i][ncols + k] = 1.0;
        t.basis[i] = static_cast<int>(ncols + k);
    }

    LpSolution result;

    // Phase 1: maximize -sum(artificials).
    if (nart > 0) {
        std::vector<double> phase1(t.ncols, 0.0);
        for (std::size_t k = 0; k < nart; ++k) phase1[ncols + k] = -1.0;
        t.price(phase1);
        bool unbounded = false;
        while (t.iterate(t.ncols, tol, unbounded)) {}
        // cost_rhs == -(sum of artificials) at the phase-1 optimum
        if (t.cost_rhs < -tol * (1.0 + bscale)) {
            result.status = LpStatus::infeasible;
            result.iterations = t.iterations;
            return result;
        }
        // Drive leftover artificials out of the basis; rows that cannot
        // pivot on any real column are redundant and dropped.
        for (std::size_t i = 0; i < t.rows.size();) {
            if (t.basis[i] < static_cast<int>(ncols)) { ++i; continue; }
            std::size_t col = ncols;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (std::fabs(t.rows[i][j]) > tol) { col = j; break; }
            }
            if (col < ncols) {
                t.pivot(i, col);
                ++i;
            } else {
                t.rows.erase(t.rows.begin() + static_cast<long>(i));
                t.rhs.erase(t.rhs.begin() + static_cast<long>(i));
                t.basis.erase(t.basis.begin() + static_cast<long>(i));
            }
        }
    }

    // Phase 2: the real objective over structural columns; artificial
    // columns are excluded from entering.
    std::vector<double> full_objective(t.ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) full_objective[j] = p.objective[j];
    t.price(full_objective);
    bool unbounded = false;
    while (t.iterate(ncols, tol, unbounded)) {}
    result.iterations = t.iterations;
    if (unbounded) {
        result.status = LpStatus::unbounded;
        return result;
    }

    result.status = LpStatus::optimal;
    result.solution.assign(n, 0.0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const int b = t.basis[i];
        if (b >= 0 && b < static_cast<int>(n))
            result.solution[static_cast<std::size_t>(b)] = t.rhs[i];
    }
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += p.objective[j] * result.solution[j];
    result.objective_value = value;
    return result;
}

}  // namespace ctxkit
