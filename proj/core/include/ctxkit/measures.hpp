#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ctxkit/model.hpp"

namespace ctxkit {

/// Cap on the number of global assignments enumerated by
/// global_assignments / incidence_matrix.
inline constexpr std::size_t kDefaultGlobalLimit = std::size_t{1} << 20;

/// All joint outcome assignments over the full observable set, in
/// lexicographic order (first observable most significant). Throws when
/// the count would exceed `limit`.
std::vector<GlobalAssignment> global_assignments(const Scenario& scenario,
                                                 std::size_t limit = kDefaultGlobalLimit);

/// 0/1 consistency matrix: one row per (context, section) pair in canonical
/// order, one column per global assignment; entry 1 iff the assignment
/// restricted to the context equals the section. Each column has exactly
/// one 1 per context block.
struct IncidenceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> context_offset;  // row offset of each context block
    std::vector<std::uint8_t> data;           // row major

    std::uint8_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

IncidenceMatrix incidence_matrix(const Scenario& scenario,
                                 std::size_t limit = kDefaultGlobalLimit);

struct ContextualFraction {
    double cf = 0.0;
    std::vector<double> witness;  // sub-probability weights over global assignments
    int lp_iterations = 0;
};

/// Contextual fraction via the LP
///   max sum(b)  s.t.  M.b <= e componentwise, b >= 0,
/// with M the incidence matrix; cf = 1 - optimum, clamped to [0,1].
/// Zero exactly when some global distribution reproduces every context
/// distribution.
ContextualFraction contextual_fraction(const EmpiricalModel& model,
                                       std::size_t limit = kDefaultGlobalLimit,
                                       double lp_tol = 1e-9);

struct SignallingFraction {
    double sf = 0.0;
    std::vector<ContextDistribution> witness;  // the retained sub-model, mass 1-sf per context
    int lp_iterations = 0;
};

/// Signalling fraction via the LP over sub-rows f <= e with equal mass mu
/// per context and agreeing overlap marginals; sf = 1 - mu*, clamped to
/// [0,1]. Zero iff the model is non-signalling.
SignallingFraction signalling_fraction(const EmpiricalModel& model, double lp_tol = 1e-9);

/// Bundle of the two fractions plus the noise-robust contextuality
/// criterion cf > 2|M|sf.
struct MeasureResult {
    double cf = 0.0;
    double sf = 0.0;
    std::vector<double> noncontextual_witness;
    std::vector<ContextDistribution> nonsignalling_witness;
    bool emeriau_conclusive = false;
    double emeriau_slack = 0.0;  // cf - 2|M|sf
    int cf_iterations = 0;
    int sf_iterations = 0;
};

MeasureResult measures(const EmpiricalModel& model, std::size_t limit = kDefaultGlobalLimit,
                       double lp_tol = 1e-9);

struct EmeriauCriterion {
    bool conclusive = false;
    double slack = 0.0;  // cf - 2|M|sf
};

/// cf > 2|M|sf certifies contextuality despite signalling.
EmeriauCriterion emeriau_conclusive(const EmpiricalModel& model,
                                    std::size_t limit = kDefaultGlobalLimit,
                                    double lp_tol = 1e-9);

/// Maps outcome indices to +1/-1 values; index 0 -> +1, 1 -> -1 by default.
struct SignMap {
    double operator()(int outcome) const { return outcome == 0 ? plus : minus; }
    double plus = 1.0;
    double minus = -1.0;
};

/// Per-context correlation <R1 R2> = sum_s e(s) v(s1) v(s2) for rank-2
/// contexts over binary observables, in scenario context order.
std::vector<double> cyclic_correlations(const EmpiricalModel& model, SignMap sign = {});

/// Maximum of sigma.x over sign vectors sigma with an odd number of -1
/// entries, in closed form: sum|x_i| when the negative count is odd or any
/// entry is zero, else sum|x_i| - 2 min|x_i|.
double s_odd(std::span<const double> x);

struct CyclicViolation {
    int n = 0;
    std::vector<double> correlations;  // scenario context order
    double s_odd_value = 0.0;
    double violation = 0.0;            // s_odd - (n - 2)
};

/// Bell-type inequality violation of an n-cycle model. Positive violation
/// on a non-signalling model implies contextuality. Throws when the
/// scenario is not a single rank-2 cycle of binary observables.
CyclicViolation cyclic_violation(const EmpiricalModel& model);

struct CfViolationRelation {
    double lhs = 0.0;  // max{0, violation / 2}
    double rhs = 0.0;  // cf
    bool equality_applicable = false;  // outcome-symmetric and non-signalling
    bool holds_as_equality = false;
};

/// Compares max{0, violation/2} with cf. Equality is only asserted for
/// outcome-symmetric non-signalling cyclic models; for other models both
/// sides are reported with equality_applicable = false.
CfViolationRelation cf_violation_relation(const EmpiricalModel& model, double tol);

}  // namespace ctxkit
