#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ctxkit/model.hpp"

namespace ctxkit {

/// Expectations attached to one context of a cyclic system: the two
/// single-variable expectations (in context_pairs order) and the product
/// expectation, all under the +1/-1 outcome encoding.
struct PairExpectations {
    double first = 0.0;
    double second = 0.0;
    double product = 0.0;
};

/// Contextuality-by-Default view of a rank-2 cyclic scenario: n contents,
/// n contexts of two contents each, arranged in a single cycle, with the
/// measured expectation tables.
struct CyclicSystem {
    int n = 0;
    std::vector<std::string> contents;
    std::vector<std::array<int, 2>> context_pairs;   // indices into contents, cycle order
    std::vector<PairExpectations> expectations;      // per context, cycle order
};

/// Invariant check: every content in exactly two contexts, the incidence
/// graph one cycle, all expectations in [-1,1], and each context's
/// reconstructed pairwise distribution non-negative (>= -1e-9).
std::vector<std::string> check_cyclic_system(const CyclicSystem& system);

/// Validated constructor; throws std::invalid_argument listing the first
/// broken invariant.
CyclicSystem make_cyclic_system(std::vector<std::string> contents,
                                std::vector<std::array<int, 2>> context_pairs,
                                std::vector<PairExpectations> expectations);

/// Detects whether the scenario is a single cycle of rank-2 contexts with
/// every observable in exactly two contexts. On success returns the context
/// indices in canonical cycle order: starting at the scenario's first
/// context, walking toward the lexicographically smaller adjacent context.
std::optional<std::vector<int>> find_cycle(const Scenario& scenario);

/// Builds the CbD system of a binary rank-2 cyclic model. Contents are the
/// scenario's observables; expectations use the 0 -> +1, 1 -> -1 map.
/// Throws if the scenario is not cyclic, not rank-2, or not binary.
CyclicSystem to_cyclic_system(const EmpiricalModel& model);

/// Direct Influence: the sum over contents of the absolute difference of
/// that content's expectation across its two contexts. Zero for systems
/// built from non-signalling models.
double direct_influence(const CyclicSystem& system);

struct CbdResult {
    double delta = 0.0;
    double s_odd_value = 0.0;
    double cnt1 = 0.0;        // = cnt2 for cyclic systems
    bool contextual = false;  // cnt1 > 0
};

/// cnt1 = s_odd(product expectations) - delta - n + 2; the system is
/// contextual exactly when cnt1 > 0.
CbdResult cnt1(const CyclicSystem& system);

/// to_cyclic_system followed by cnt1.
CbdResult classify_cbd(const EmpiricalModel& model);

}  // namespace ctxkit
