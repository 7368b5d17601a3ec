#include "ctxkit/scenario.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ctxkit {

std::vector<std::string> check_scenario_definition(
    const std::vector<std::string>& observables,
    const std::vector<std::vector<std::string>>& outcomes,
    const std::vector<std::vector<std::string>>& contexts) {
    std::vector<std::string> problems;

    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < observables.size(); ++i) {
        if (!index.emplace(observables[i], static_cast<int>(i)).second)
            problems.push_back("duplicate observable '" + observables[i] + "'");
    }
    if (observables.empty()) problems.push_back("scenario has no observables");

    if (outcomes.size() != observables.size()) {
        problems.push_back("outcome lists do not match observable count");
    } else {
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i].size() < 2)
                problems.push_back("observable '" + observables[i] + "' has fewer than 2 outcomes");
            std::unordered_set<std::string> labels(outcomes[i].begin(), outcomes[i].end());
            if (labels.size() != outcomes[i].size())
                problems.push_back("observable '" + observables[i] + "' has duplicate outcome labels");
        }
    }

    if (contexts.empty()) problems.push_back("scenario has no contexts");

    std::set<std::set<std::string>> seen;
    std::unordered_set<std::string> covered;
    for (std::size_t c = 0; c < contexts.size(); ++c) {
        const auto& ctx = contexts[c];
        const std::string where = "context " + std::to_string(c);
        if (ctx.empty()) problems.push_back(where + " is empty");
        std::unordered_set<std::string> members;
        for (const auto& name : ctx) {
            if (!index.count(name))
                problems.push_back(where + " references unknown observable '" + name + "'");
            if (!members.insert(name).second)
                problems.push_back(where + " repeats observable '" + name + "'");
            covered.insert(name);
        }
        std::set<std::string> as_set(ctx.begin(), ctx.end());
        if (!seen.insert(as_set).second)
            problems.push_back(where + " duplicates an earlier context's observable set");
    }
    for (const auto& name : observables) {
        if (!covered.count(name))
            problems.push_back("observable '" + name + "' is not covered by any context");
    }
    return problems;
}

Scenario Scenario::create(std::vector<std::string> observables,
                          std::vector<std::vector<std::string>> outcomes,
                          const std::vector<std::vector<std::string>>& contexts) {
    auto problems = check_scenario_definition(observables, outcomes, contexts);
    if (!problems.empty()) throw std::invalid_argument("invalid scenario: " + problems.front());

    Scenario s;
    s.observables_ = std::move(observables);
    s.outcomes_ = std::move(outcomes);
    s.contexts_.reserve(contexts.size());
    for (const auto& ctx : contexts) {
        std::vector<int> resolved;
        resolved.reserve(ctx.size());
        for (const auto& name : ctx) resolved.push_back(s.observable_index(name));
        s.contexts_.push_back(std::move(resolved));
    }
    return s;
}

int Scenario::observable_index(std::string_view name) const {
    for (std::size_t i = 0; i < observables_.size(); ++i)
        if (observables_[i] == name) return static_cast<int>(i);
    return -1;
}

std::size_t Scenario::section_count(int context) const {
    std::size_t n = 1;
    for (int obs : contexts_.at(context)) n *= outcomes_[obs].size();
    return n;
}

bool Scenario::all_binary() const {
    return std::all_of(outcomes_.begin(), outcomes_.end(),
                       [](const auto& o) { return o.size() == 2; });
}

std::vector<Section> enumerate_sections(const Scenario& scenario, int context) {
    if (context < 0 || static_cast<std::size_t>(context) >= scenario.context_count())
        throw std::out_of_range("unknown context " + std::to_string(context));
    const auto& obs = scenario.contexts()[context];
    const std::size_t total = scenario.section_count(context);

    std::vector<Section> sections;
    sections.reserve(total);
    std::vector<int> current(obs.size(), 0);
    for (std::size_t i = 0; i < total; ++i) {
        sections.push_back(Section{context, current});
        // increment mixed-radix counter, last observable least significant
        for (int pos = static_cast<int>(obs.size()) - 1; pos >= 0; --pos) {
            if (++current[pos] < static_cast<int>(scenario.outcome_count(obs[pos]))) break;
            current[pos] = 0;
        }
    }
    return sections;
}

std::size_t section_index(const Scenario& scenario, const Section& section) {
    const auto& obs = scenario.contexts().at(section.context);
    if (section.outcomes.size() != obs.size())
        throw std::invalid_argument("section length does not match its context");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const auto radix = scenario.outcome_count(obs[i]);
        const int o = section.outcomes[i];
        if (o < 0 || static_cast<std::size_t>(o) >= radix)
            throw std::out_of_range("outcome index out of range");
        idx = idx * radix + static_cast<std::size_t>(o);
    }
    return idx;
}

Section section_from_index(const Scenario& scenario, int context, std::size_t index) {
    const auto& obs = scenario.contexts().at(context);
    std::vector<int> out(obs.size(), 0);
    for (int i = static_cast<int>(obs.size()) - 1; i >= 0; --i) {
        const auto radix = scenario.outcome_count(obs[i]);
        out[i] = static_cast<int>(index % radix);
        index /= radix;
    }
    if (index != 0) throw std::out_of_range("section index out of range");
    return Section{context, std::move(out)};
}

std::vector<int> restrict_section(const Scenario& scenario, const Section& section,
                                  std::span<const int> subset) {
    const auto& obs = scenario.contexts().at(section.context);
    std::vector<int> restricted;
    restricted.reserve(subset.size());
    for (int want : subset) {
        auto it = std::find(obs.begin(), obs.end(), want);
        if (it == obs.end())
            throw std::invalid_argument("subset observable not in the section's context");
        restricted.push_back(section.outcomes[static_cast<std::size_t>(it - obs.begin())]);
    }
    return restricted;
}

}  // namespace ctxkit
