#include "ctxkit/cbd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ctxkit/measures.hpp"

namespace ctxkit {

std::vector<std::string> check_cyclic_system(const CyclicSystem& system) {
    std::vector<std::string> problems;
    const std::size_t n = system.contents.size();
    if (system.n != static_cast<int>(n))
        problems.push_back("n does not match the number of contents");
    if (system.context_pairs.size() != n || system.expectations.size() != n) {
        problems.push_back("context or expectation count does not match n");
        return problems;
    }
    // n = 2 is allowed: two contexts over the same two contents form a
    // valid cycle even though no scenario cover can express it.
    if (n < 2) {
        problems.push_back("a cyclic system needs at least 2 contexts");
        return problems;
    }

    std::vector<std::vector<int>> contexts_of(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto [a, b] = system.context_pairs[j];
        if (a < 0 || b < 0 || a >= static_cast<int>(n) || b >= static_cast<int>(n) || a == b) {
            problems.push_back("context " + std::to_string(j) + " has a bad content pair");
            return problems;
        }
        contexts_of[a].push_back(static_cast<int>(j));
        contexts_of[b].push_back(static_cast<int>(j));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (contexts_of[i].size() != 2)
            problems.push_back("content '" + system.contents[i] + "' is in " +
                               std::to_string(contexts_of[i].size()) + " contexts, expected 2");
    }
    if (!problems.empty()) return problems;

    // walk the content/context incidence; a single cycle visits every context
    std::vector<char> seen(n, 0);
    int context = 0;
    int via = system.context_pairs[0][0];
    std::size_t visited = 0;
    do {
        seen[context] = 1;
        ++visited;
        const auto [a, b] = system.context_pairs[context];
        const int leave = (a == via) ? b : a;
        const auto& pair = contexts_of[leave];
        context = (pair[0] == context) ? pair[1] : pair[0];
        via = leave;
    } while (!seen[context] && visited <= n);
    if (visited != n)
        problems.push_back("the context-content incidence graph is not a single cycle");

    for (std::size_t j = 0; j < n; ++j) {
        const auto& e = system.expectations[j];
        if (std::fabs(e.first) > 1.0 + 1e-12 || std::fabs(e.second) > 1.0 + 1e-12 ||
            std::fabs(e.product) > 1.0 + 1e-12) {
            problems.push_back("context " + std::to_string(j) + " has an expectation outside [-1,1]");
            continue;
        }
        for (int sa : {+1, -1}) {
            for (int sb : {+1, -1}) {
                const double cell = (1.0 + sa * e.first + sb * e.second + sa * sb * e.product) / 4.0;
                if (cell < -1e-9)
                    problems.push_back("context " + std::to_string(j) +
                                       " expectations do not form a distribution");
            }
        }
    }
    return problems;
}

CyclicSystem make_cyclic_system(std::vector<std::string> contents,
                                std::vector<std::array<int, 2>> context_pairs,
                                std::vector<PairExpectations> expectations) {
    CyclicSystem system;
    system.n = static_cast<int>(contents.size());
    system.contents = std::move(contents);
    system.context_pairs = std::move(context_pairs);
    system.expectations = std::move(expectations);
    auto problems = check_cyclic_system(system);
    if (!problems.empty())
        throw std::invalid_argument("invalid cyclic system: " + problems.front());
    return system;
}

std::optional<std::vector<int>> find_cycle(const Scenario& scenario) {
    const std::size_t n = scenario.context_count();
    if (n < 3 || scenario.observable_count() != n) return std::nullopt;

    std::vector<std::vector<int>> contexts_of(scenario.observable_count());
    for (std::size_t c = 0; c < n; ++c) {
        const auto& obs = scenario.contexts()[c];
        if (obs.size() != 2) return std::nullopt;
        contexts_of[obs[0]].push_back(static_cast<int>(c));
        contexts_of[obs[1]].push_back(static_cast<int>(c));
    }
    for (const auto& pair : contexts_of)
        if (pair.size() != 2) return std::nullopt;

    auto next_context = [&](int context, int via) {
        const auto& pair = contexts_of[via];
        return pair[0] == context ? pair[1] : pair[0];
    };
    auto names_of = [&](int context) {
        std::vector<std::string> names;
        for (int o : scenario.contexts()[context]) names.push_back(scenario.observables()[o]);
        return names;
    };

    // two walk directions from context 0; prefer the one whose second
    // context compares lexicographically smaller. `via` is the observable
    // we entered through, so leaving happens through the other one.
    const auto& first = scenario.contexts()[0];
    const int option_a = next_context(0, first[0]);
    const int option_b = next_context(0, first[1]);
    const int start_via = names_of(option_a) <= names_of(option_b) ? first[1] : first[0];

    std::vector<int> order;
    std::vector<char> seen(n, 0);
    int context = 0;
    int via = start_via;
    while (!seen[context]) {
        seen[context] = 1;
        order.push_back(context);
        const auto& obs = scenario.contexts()[context];
        const int leave = (obs[0] == via) ? obs[1] : obs[0];
        context = next_context(context, leave);
        via = leave;
    }
    if (order.size() != n || context != 0) return std::nullopt;
    return order;
}

CyclicSystem to_cyclic_system(const EmpiricalModel& model) {
    const Scenario& sc = model.scenario;
    for (const auto& ctx : sc.contexts())
        if (ctx.size() != 2)
            throw std::invalid_argument("to_cyclic_system: context rank is not 2");
    if (!sc.all_binary())
        throw std::invalid_argument("to_cyclic_system: observables must be binary");
    const auto cycle = find_cycle(sc);
    if (!cycle)
        throw std::invalid_argument("to_cyclic_system: scenario is not a single cycle");

    CyclicSystem system;
    system.n = static_cast<int>(sc.context_count());
    system.contents = sc.observables();
    const SignMap sign;
    for (int c : *cycle) {
        const auto& obs = sc.contexts()[c];
        system.context_pairs.push_back({obs[0], obs[1]});
        const auto& row = model.distributions[c].probabilities;
        PairExpectations e;
        for (std::size_t s = 0; s < row.size(); ++s) {
            const auto sec = section_from_index(sc, c, s);
            const double va = sign(sec.outcomes[0]);
            const double vb = sign(sec.outcomes[1]);
            e.first += row[s] * va;
            e.second += row[s] * vb;
            e.product += row[s] * va * vb;
        }
        system.expectations.push_back(e);
    }
    return system;
}

double direct_influence(const CyclicSystem& system) {
    const std::size_t n = system.contents.size();
    // expectation of each content in the two contexts that carry it
    std::vector<std::vector<double>> values(n);
    for (std::size_t j = 0; j < system.context_pairs.size(); ++j) {
        const auto [a, b] = system.context_pairs[j];
        values[a].push_back(system.expectations[j].first);
        values[b].push_back(system.expectations[j].second);
    }
    double delta = 0.0;
    for (const auto& pair : values) {
        if (pair.size() != 2)
            throw std::invalid_argument("direct_influence: content is not in exactly 2 contexts");
        delta += std::fabs(pair[0] - pair[1]);
    }
    return delta;
}

CbdResult cnt1(const CyclicSystem& system) {
    std::vector<double> products;
    products.reserve(system.expectations.size());
    for (const auto& e : system.expectations) products.push_back(e.product);

    CbdResult out;
    out.delta = direct_influence(system);
    out.s_odd_value = s_odd(products);
    out.cnt1 = out.s_odd_value - out.delta - system.n + 2;
    out.contextual = out.cnt1 > 0.0;
    return out;
}

CbdResult classify_cbd(const EmpiricalModel& model) { return cnt1(to_cyclic_system(model)); }

}  // namespace ctxkit
