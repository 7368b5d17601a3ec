#pragma once

#include <span>
#include <string>
#include <vector>

#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// Probability distribution over the joint outcomes of one context, stored
/// in canonical section order.
struct ContextDistribution {
    int context = -1;
    std::vector<double> probabilities;
};

/// An empirical model: one context distribution per scenario context, in
/// scenario context order. Immutable by convention; every operation below
/// is a pure function.
struct EmpiricalModel {
    Scenario scenario;
    std::vector<ContextDistribution> distributions;
};

/// One outcome index per observable of the full scenario, observable order.
struct GlobalAssignment {
    std::vector<int> outcomes;
};

/// Marginal of a context distribution onto a subset of its context's
/// observables. `subset` holds scenario observable indices; the result is
/// indexed by the canonical enumeration of the subset (lexicographic,
/// first listed observable most significant) and carries the same total
/// mass as the input.
std::vector<double> marginalize(const Scenario& scenario, const ContextDistribution& dist,
                                std::span<const int> subset);

/// Worst marginal disagreement across context overlaps.
struct SignallingWitness {
    double deviation = 0.0;
    int context_a = -1;
    int context_b = -1;
    std::vector<int> overlap;       // scenario observable indices, ascending
    std::size_t section = 0;        // canonical index into the overlap's sections
};

/// Maximum over all context pairs with non-empty overlap I and all sections
/// t of I of |marg(e_C, I)[t] - marg(e_C', I)[t]|. Zero iff non-signalling
/// (pairwise overlap convention).
SignallingWitness max_signalling_deviation(const EmpiricalModel& model);

/// True iff max_signalling_deviation(model) <= tol. Throws on negative tol.
bool is_nonsignalling(const EmpiricalModel& model, double tol);

/// Per-observable outcome permutation; must be self-inverse.
using OutcomeInvolution = std::vector<std::vector<int>>;

/// The involution swapping the two outcomes of every observable.
/// Requires an all-binary scenario.
OutcomeInvolution swap_involution(const Scenario& scenario);

/// Averages each row with its image under the involution applied
/// componentwise: e'(s) = (e(s) + e(s^)) / 2. The output is invariant under
/// the involution and applying symmetrize twice equals applying it once.
EmpiricalModel symmetrize(const EmpiricalModel& model, const OutcomeInvolution& involution);

/// A broken model invariant, with enough location to point at the offending
/// row/entry.
struct ModelViolation {
    enum class Kind {
        missing_distribution,
        extra_distribution,
        context_mismatch,
        row_length,
        negative_probability,
        not_finite,
        normalization,
    };
    Kind kind;
    int context = -1;        // -1 when model-level
    long section = -1;       // -1 when row-level
    double value = 0.0;
    std::string message;
};

/// Reports every broken invariant: negative or non-finite entries, row sums
/// off by more than tol, missing/mismatched distributions, wrong row
/// lengths. Empty result means the model is valid at tolerance tol.
std::vector<ModelViolation> validate(const EmpiricalModel& model, double tol);

/// Divides each row by its sum. Throws if some row's sum is not positive.
EmpiricalModel renormalize(const EmpiricalModel& model);

}  // namespace ctxkit
