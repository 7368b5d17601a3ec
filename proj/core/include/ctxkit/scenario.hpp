#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctxkit {

/// A measurement scenario: a set of named observables, an ordered outcome
/// set per observable, and a cover of measurement contexts (ordered subsets
/// of the observables, each jointly measurable).
///
/// Instances are immutable after construction and safe to share across
/// threads. Use Scenario::create to build one; it enforces the structural
/// invariants (unique observables, non-empty duplicate-free contexts that
/// cover the observable set, no repeated context).
class Scenario {
public:
    /// Empty scenario; useful only as a placeholder to assign into.
    Scenario() = default;

    /// Builds a scenario from observable names, per-observable outcome
    /// labels and contexts given as lists of observable names. Throws
    /// std::invalid_argument on any structural violation.
    static Scenario create(std::vector<std::string> observables,
                           std::vector<std::vector<std::string>> outcomes,
                           const std::vector<std::vector<std::string>>& contexts);

    const std::vector<std::string>& observables() const { return observables_; }
    const std::vector<std::vector<std::string>>& outcomes() const { return outcomes_; }

    /// Contexts as lists of observable indices, in declared order.
    const std::vector<std::vector<int>>& contexts() const { return contexts_; }

    std::size_t observable_count() const { return observables_.size(); }
    std::size_t context_count() const { return contexts_.size(); }
    std::size_t outcome_count(int observable) const { return outcomes_[observable].size(); }

    /// Index of a named observable, or -1 if absent.
    int observable_index(std::string_view name) const;

    /// Number of joint outcomes of a context (product of outcome-set sizes).
    std::size_t section_count(int context) const;

    bool all_binary() const;

private:
    std::vector<std::string> observables_;
    std::vector<std::vector<std::string>> outcomes_;
    std::vector<std::vector<int>> contexts_;
};

/// A joint outcome assignment on one full context: one outcome index per
/// observable of the context, in context order.
struct Section {
    int context = -1;
    std::vector<int> outcomes;
};

/// Structural check used by Scenario::create and by the file loader.
/// Contexts reference observables by name; returns one message per broken
/// invariant (empty means well-formed).
std::vector<std::string> check_scenario_definition(
    const std::vector<std::string>& observables,
    const std::vector<std::vector<std::string>>& outcomes,
    const std::vector<std::vector<std::string>>& contexts);

/// All joint outcomes of a context in canonical order: lexicographic by
/// outcome index with the context's first observable most significant.
/// The i-th returned section has canonical index i.
std::vector<Section> enumerate_sections(const Scenario& scenario, int context);

/// Canonical index of a section within its context's enumeration.
std::size_t section_index(const Scenario& scenario, const Section& section);

/// Inverse of section_index.
Section section_from_index(const Scenario& scenario, int context, std::size_t index);

/// Restriction of a section to a subset of its context's observables.
/// `subset` holds scenario observable indices; the result lists outcome
/// indices in subset order. Throws if the subset is not contained in the
/// section's context.
std::vector<int> restrict_section(const Scenario& scenario, const Section& section,
                                  std::span<const int> subset);

}  // namespace ctxkit
