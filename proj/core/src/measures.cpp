#include "ctxkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ctxkit/cbd.hpp"
#include "ctxkit/lp.hpp"

namespace ctxkit {

std::vector<GlobalAssignment> global_assignments(const Scenario& scenario, std::size_t limit) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < scenario.observable_count(); ++i) {
        const std::size_t radix = scenario.outcome_count(static_cast<int>(i));
        if (total > limit / radix)
            throw std::invalid_argument("global assignment count exceeds the configured limit");
        total *= radix;
    }
    std::vector<GlobalAssignment> out;
    out.reserve(total);
    std::vector<int> current(scenario.observable_count(), 0);
    for (std::size_t i = 0; i < total; ++i) {
        out.push_back(GlobalAssignment{current});
        for (int pos = static_cast<int>(current.size()) - 1; pos >= 0; --pos) {
            if (++current[pos] < static_cast<int>(scenario.outcome_count(pos))) break;
            current[pos] = 0;
        }
    }
    return out;
}

IncidenceMatrix incidence_matrix(const Scenario& scenario, std::size_t limit) {
    const auto globals = global_assignments(scenario, limit);

    IncidenceMatrix m;
    m.cols = globals.size();
    m.context_offset.reserve(scenario.context_count());
    for (std::size_t c = 0; c < scenario.context_count(); ++c) {
        m.context_offset.push_back(m.rows);
        m.rows += scenario.section_count(static_cast<int>(c));
    }
    m.data.assign(m.rows * m.cols, 0);

    for (std::size_t g = 0; g < globals.size(); ++g) {
        const auto& assignment = globals[g].outcomes;
        for (std::size_t c = 0; c < scenario.context_count(); ++c) {
            const auto& obs = scenario.contexts()[c];
            std::size_t idx = 0;
            for (int o : obs) idx = idx * scenario.outcome_count(o) +
                                    static_cast<std::size_t>(assignment[o]);
            m.data[(m.context_offset[c] + idx) * m.cols + g] = 1;
        }
    }
    return m;
}

namespace {

// Stacks the model's rows in incidence-matrix row order.
std::vector<double> stacked_probabilities(const EmpiricalModel& model) {
    std::vector<double> e;
    for (const auto& dist : model.distributions)
        e.insert(e.end(), dist.probabilities.begin(), dist.probabilities.end());
    return e;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

ContextualFraction contextual_fraction(const EmpiricalModel& model, std::size_t limit,
                                       double lp_tol) {
    const auto m = incidence_matrix(model.scenario, limit);
    const auto e = stacked_probabilities(model);
    if (e.size() != m.rows)
        throw std::invalid_argument("contextual_fraction: model rows do not match the scenario");

    LpProblem lp;
    lp.objective.assign(m.cols, 1.0);
    lp.ineq_matrix.assign(m.rows, std::vector<double>(m.cols, 0.0));
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            lp.ineq_matrix[r][c] = static_cast<double>(m.at(r, c));
    lp.ineq_rhs = e;

    const LpSolution sol = solve_max(lp, lp_tol);
    if (sol.status != LpStatus::optimal)
        throw std::logic_error("contextual_fraction: LP unexpectedly not optimal");

    ContextualFraction out;
    out.cf = clamp01(1.0 - sol.objective_value);
    out.witness = sol.solution;
    out.lp_iterations = sol.iterations;
    return out;
}

SignallingFraction signalling_fraction(const EmpiricalModel& model, double lp_tol) {
    const Scenario& sc = model.scenario;
    const std::size_t ncontexts = sc.context_count();

    std::vector<std::size_t> offset(ncontexts, 0);
    std::size_t nrows = 0;
    for (std::size_t c = 0; c < ncontexts; ++c) {
        offset[c] = nrows;
        nrows += sc.section_count(static_cast<int>(c));
    }
    const std::size_t mu = nrows;  // column index of the shared mass variable
    const std::size_t nvars = nrows + 1;
    const auto e = stacked_probabilities(model);
    if (e.size() != nrows)
        throw std::invalid_argument("signalling_fraction: model rows do not match the scenario");

    LpProblem lp;
    lp.objective.assign(nvars, 0.0);
    lp.objective[mu] = 1.0;

    // f <= e
    lp.ineq_matrix.assign(nrows, std::vector<double>(nvars, 0.0));
    for (std::size_t r = 0; r < nrows; ++r) lp.ineq_matrix[r][r] = 1.0;
    lp.ineq_rhs = e;

    // per-context mass: sum_s f_{C,s} - mu = 0
    for (std::size_t c = 0; c < ncontexts; ++c) {
        std::vector<double> row(nvars, 0.0);
        for (std::size_t s = 0; s < sc.section_count(static_cast<int>(c)); ++s)
            row[offset[c] + s] = 1.0;
        row[mu] = -1.0;
        lp.eq_matrix.push_back(std::move(row));
        lp.eq_rhs.push_back(0.0);
    }

    // overlap marginal agreement between every context pair
    for (std::size_t a = 0; a < ncontexts; ++a) {
        for (std::size_t b = a + 1; b < ncontexts; ++b) {
            std::vector<int> shared;
            for (int obs : sc.contexts()[a])
                if (std::find(sc.contexts()[b].begin(), sc.contexts()[b].end(), obs) !=
                    sc.contexts()[b].end())
                    shared.push_back(obs);
            std::sort(shared.begin(), shared.end());
            if (shared.empty()) continue;

            std::size_t nsections = 1;
            for (int obs : shared) nsections *= sc.outcome_count(obs);

            std::vector<std::vector<double>> rows(nsections, std::vector<double>(nvars, 0.0));
            auto scatter = [&](std::size_t context, double coeff) {
                const auto sections = enumerate_sections(sc, static_cast<int>(context));
                for (std::size_t s = 0; s < sections.size(); ++s) {
                    const auto r = restrict_section(sc, sections[s], shared);
                    std::size_t t = 0;
                    for (std::size_t j = 0; j < shared.size(); ++j)
                        t = t * sc.outcome_count(shared[j]) + static_cast<std::size_t>(r[j]);
                    rows[t][offset[context] + s] += coeff;
                }
            };
            scatter(a, 1.0);
            scatter(b, -1.0);
            for (auto& row : rows) {
                lp.eq_matrix.push_back(std::move(row));
                lp.eq_rhs.push_back(0.0);
            }
        }
    }

    const LpSolution sol = solve_max(lp, lp_tol);
    if (sol.status != LpStatus::optimal)
        throw std::logic_error("signalling_fraction: LP unexpectedly not optimal");

    SignallingFraction out;
    out.sf = clamp01(1.0 - sol.objective_value);
    out.lp_iterations = sol.iterations;
    out.witness.reserve(ncontexts);
    for (std::size_t c = 0; c < ncontexts; ++c) {
        ContextDistribution dist;
        dist.context = static_cast<int>(c);
        const std::size_t count = sc.section_count(static_cast<int>(c));
        dist.probabilities.assign(sol.solution.begin() + static_cast<long>(offset[c]),
                                  sol.solution.begin() + static_cast<long>(offset[c] + count));
        out.witness.push_back(std::move(dist));
    }
    return out;
}

MeasureResult measures(const EmpiricalModel& model, std::size_t limit, double lp_tol) {
    MeasureResult out;
    auto cf = contextual_fraction(model, limit, lp_tol);
    auto sf = signalling_fraction(model, lp_tol);
    out.cf = cf.cf;
    out.sf = sf.sf;
    out.noncontextual_witness = std::move(cf.witness);
    out.nonsignalling_witness = std::move(sf.witness);
    out.cf_iterations = cf.lp_iterations;
    out.sf_iterations = sf.lp_iterations;
    const double bound = 2.0 * static_cast<double>(model.scenario.context_count()) * out.sf;
    out.emeriau_slack = out.cf - bound;
    out.emeriau_conclusive = out.cf > bound;
    return out;
}

EmeriauCriterion emeriau_conclusive(const EmpiricalModel& model, std::size_t limit,
                                    double lp_tol) {
    const auto result = measures(model, limit, lp_tol);
    return {result.emeriau_conclusive, result.emeriau_slack};
}

std::vector<double> cyclic_correlations(const EmpiricalModel& model, SignMap sign) {
    const Scenario& sc = model.scenario;
    std::vector<double> out;
    out.reserve(sc.context_count());
    for (std::size_t c = 0; c < sc.context_count(); ++c) {
        const auto& obs = sc.contexts()[c];
        if (obs.size() != 2)
            throw std::invalid_argument("cyclic_correlations: context rank is not 2");
        for (int o : obs)
            if (sc.outcome_count(o) != 2)
                throw std::invalid_argument("cyclic_correlations: observable is not binary");
        const auto& row = model.distributions[c].probabilities;
        double corr = 0.0;
        for (std::size_t s = 0; s < row.size(); ++s) {
            const auto sec = section_from_index(sc, static_cast<int>(c), s);
            corr += row[s] * sign(sec.outcomes[0]) * sign(sec.outcomes[1]);
        }
        out.push_back(corr);
    }
    return out;
}

double s_odd(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("s_odd: empty vector");
    double min_abs = std::numeric_limits<double>::infinity();
    std::size_t min_index = 0;
    std::size_t negatives = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::fabs(x[i]);
        if (a < min_abs) {
            min_abs = a;
            min_index = i;
        }
        if (x[i] < 0.0) ++negatives;
    }
    // The maximizing odd-parity sign vector follows the entry signs; an even
    // negative count flips the smallest-magnitude entry (free when it is 0).
    // Evaluating that sign vector term by term gives sum|x_i| for an odd
    // count or a zero entry, and sum|x_i| - 2 min|x_i| otherwise.
    const bool flip_min = negatives % 2 == 0;
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double term = std::fabs(x[i]);
        if (flip_min && i == min_index) term = -term;
        total += term;
    }
    return total;
}

CyclicViolation cyclic_violation(const EmpiricalModel& model) {
    if (!find_cycle(model.scenario))
        throw std::invalid_argument("cyclic_violation: scenario is not a rank-2 cycle");
    CyclicViolation out;
    out.n = static_cast<int>(model.scenario.context_count());
    out.correlations = cyclic_correlations(model);
    out.s_odd_value = s_odd(out.correlations);
    out.violation = out.s_odd_value - (out.n - 2);
    return out;
}

CfViolationRelation cf_violation_relation(const EmpiricalModel& model, double tol) {
    const auto violation = cyclic_violation(model);
    CfViolationRelation out;
    out.lhs = std::max(0.0, violation.violation / 2.0);
    out.rhs = contextual_fraction(model).cf;

    bool symmetric = false;
    if (model.scenario.all_binary()) {
        const auto mirrored = symmetrize(model, swap_involution(model.scenario));
        double dev = 0.0;
        for (std::size_t c = 0; c < model.distributions.size(); ++c)
            for (std::size_t s = 0; s < model.distributions[c].probabilities.size(); ++s)
                dev = std::max(dev, std::fabs(mirrored.distributions[c].probabilities[s] -
                                              model.distributions[c].probabilities[s]));
        symmetric = dev <= tol;
    }
    out.equality_applicable = symmetric && is_nonsignalling(model, tol);
    out.holds_as_equality = out.equality_applicable && std::fabs(out.lhs - out.rhs) <= tol;
    return out;
}

}  // namespace ctxkit
