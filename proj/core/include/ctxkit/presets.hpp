#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxkit/model.hpp"

namespace ctxkit {

/// Bell-CHSH scenario: four binary observables a1, a2, b1, b2 with the four
/// contexts {a1,b1}, {a1,b2}, {a2,b1}, {a2,b2} (the boundary of a square).
Scenario bell_chsh_scenario();

/// Non-signalling Bell-state model on the CHSH scenario with rows
/// (1/2,0,0,1/2), (3/8,1/8,1/8,3/8), (3/8,1/8,1/8,3/8), (1/8,3/8,3/8,1/8).
EmpiricalModel bell_model();

/// The PR box: perfectly correlated rows except for anti-correlation on
/// {a1,b2}. Strongly contextual and non-signalling.
EmpiricalModel pr_box_model();

/// Three binary observables x1, x2, x3 with the triangle cover
/// {x1,x2}, {x2,x3}, {x3,x1}.
Scenario pr_prism_scenario();

/// The strongly contextual triangle analog of the PR box: the first two
/// contexts perfectly correlated, the closing one anti-correlated.
EmpiricalModel pr_prism_model();

/// Two observables (pronoun, special) and (pronoun, alternate) in two
/// disjoint singleton contexts, outcomes the two candidate referents.
Scenario ws_scenario(const std::string& pronoun, const std::string& special,
                     const std::string& alternate, const std::string& noun_a,
                     const std::string& noun_b);

/// The two-pronoun extension: observables (p1,s1), (p1,a1), (p2,s2),
/// (p2,a2) with the four pairwise contexts, outcomes {A, B}. Isomorphic to
/// the Bell-CHSH scenario.
Scenario generalized_ws_scenario(const std::string& pronoun1, const std::string& special1,
                                 const std::string& alternate1, const std::string& pronoun2,
                                 const std::string& special2, const std::string& alternate2);

/// Crowd-sourced model on the cannibalistic/herbivorous x hungry/alive
/// schema. Raw rows sum to 0.998 (3-decimal rounding); with renormalize
/// each row is divided by its sum.
EmpiricalModel sahara_model(bool renormalize = true);

/// A named preset addressable from the CLI. `model` holds the published
/// numbers verbatim; presets whose rows are rounded (sahara) ask analysis
/// front-ends to renormalize before computing measures, while dumps keep
/// the raw digits.
struct Preset {
    std::string name;
    std::string description;
    EmpiricalModel model;
    bool renormalize_by_default = false;
};

/// Preset names: bell, pr-box, pr-prism, ws, gen-ws, sahara.
const std::vector<std::string>& preset_names();
std::optional<Preset> find_preset(std::string_view name);

}  // namespace ctxkit
