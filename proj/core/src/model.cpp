#include "ctxkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctxkit {

namespace {

std::size_t subset_count(const Scenario& scenario, std::span<const int> subset) {
    std::size_t n = 1;
    for (int obs : subset) n *= scenario.outcome_count(obs);
    return n;
}

std::vector<int> overlap_of(const Scenario& scenario, int ca, int cb) {
    const auto& a = scenario.contexts()[ca];
    const auto& b = scenario.contexts()[cb];
    std::vector<int> shared;
    for (int obs : a)
        if (std::find(b.begin(), b.end(), obs) != b.end()) shared.push_back(obs);
    std::sort(shared.begin(), shared.end());
    return shared;
}

}  // namespace

std::vector<double> marginalize(const Scenario& scenario, const ContextDistribution& dist,
                                std::span<const int> subset) {
    const auto& obs = scenario.contexts().at(dist.context);
    // positions of the subset observables within the context
    std::vector<std::size_t> positions;
    positions.reserve(subset.size());
    for (int want : subset) {
        auto it = std::find(obs.begin(), obs.end(), want);
        if (it == obs.end())
            throw std::invalid_argument("marginalize: subset not contained in the context");
        positions.push_back(static_cast<std::size_t>(it - obs.begin()));
    }

    std::vector<double> out(subset_count(scenario, subset), 0.0);
    const std::size_t total = scenario.section_count(dist.context);
    if (dist.probabilities.size() != total)
        throw std::invalid_argument("marginalize: row length does not match the context");

    std::vector<int> current(obs.size(), 0);
    for (std::size_t s = 0; s < total; ++s) {
        std::size_t t = 0;
        for (std::size_t j = 0; j < positions.size(); ++j)
            t = t * scenario.outcome_count(subset[j]) + static_cast<std::size_t>(current[positions[j]]);
        out[t] += dist.probabilities[s];
        for (int pos = static_cast<int>(obs.size()) - 1; pos >= 0; --pos) {
            if (++current[pos] < static_cast<int>(scenario.outcome_count(obs[pos]))) break;
            current[pos] = 0;
        }
    }
    return out;
}

SignallingWitness max_signalling_deviation(const EmpiricalModel& model) {
    SignallingWitness worst;
    const auto n = model.scenario.context_count();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            auto shared = overlap_of(model.scenario, static_cast<int>(a), static_cast<int>(b));
            if (shared.empty()) continue;
            auto ma = marginalize(model.scenario, model.distributions[a], shared);
            auto mb = marginalize(model.scenario, model.distributions[b], shared);
            for (std::size_t t = 0; t < ma.size(); ++t) {
                const double dev = std::fabs(ma[t] - mb[t]);
                if (dev > worst.deviation) {
                    worst.deviation = dev;
                    worst.context_a = static_cast<int>(a);
                    worst.context_b = static_cast<int>(b);
                    worst.overlap = shared;
                    worst.section = t;
                }
            }
        }
    }
    return worst;
}

bool is_nonsignalling(const EmpiricalModel& model, double tol) {
    if (tol < 0) throw std::invalid_argument("is_nonsignalling: negative tolerance");
    return max_signalling_deviation(model).deviation <= tol;
}

OutcomeInvolution swap_involution(const Scenario& scenario) {
    if (!scenario.all_binary())
        throw std::invalid_argument("swap_involution requires binary outcomes everywhere");
    return OutcomeInvolution(scenario.observable_count(), std::vector<int>{1, 0});
}

EmpiricalModel symmetrize(const EmpiricalModel& model, const OutcomeInvolution& involution) {
    const Scenario& sc = model.scenario;
    if (involution.size() != sc.observable_count())
        throw std::invalid_argument("symmetrize: involution length does not match observables");
    for (std::size_t i = 0; i < involution.size(); ++i) {
        const auto& perm = involution[i];
        if (perm.size() != sc.outcome_count(static_cast<int>(i)))
            throw std::invalid_argument("symmetrize: permutation length mismatch");
        for (std::size_t o = 0; o < perm.size(); ++o) {
            if (perm[o] < 0 || static_cast<std::size_t>(perm[o]) >= perm.size())
                throw std::invalid_argument("symmetrize: permutation entry out of range");
            if (perm[static_cast<std::size_t>(perm[o])] != static_cast<int>(o))
                throw std::invalid_argument("symmetrize: permutation is not an involution");
        }
    }

    EmpiricalModel out = model;
    for (std::size_t c = 0; c < sc.context_count(); ++c) {
        const auto& obs = sc.contexts()[c];
        const auto& row = model.distributions[c].probabilities;
        auto& dst = out.distributions[c].probabilities;
        const std::size_t total = sc.section_count(static_cast<int>(c));
        for (std::size_t s = 0; s < total; ++s) {
            Section sec = section_from_index(sc, static_cast<int>(c), s);
            for (std::size_t i = 0; i < obs.size(); ++i)
                sec.outcomes[i] = involution[obs[i]][sec.outcomes[i]];
            const std::size_t mirrored = section_index(sc, sec);
            dst[s] = (row[s] + row[mirrored]) / 2.0;
        }
    }
    return out;
}

std::vector<ModelViolation> validate(const EmpiricalModel& model, double tol) {
    std::vector<ModelViolation> out;
    const Scenario& sc = model.scenario;
    const std::size_t n = sc.context_count();

    if (model.distributions.size() < n) {
        for (std::size_t c = model.distributions.size(); c < n; ++c)
            out.push_back({ModelViolation::Kind::missing_distribution, static_cast<int>(c), -1, 0.0,
                           "no distribution for context " + std::to_string(c)});
    } else if (model.distributions.size() > n) {
        out.push_back({ModelViolation::Kind::extra_distribution, -1, -1,
                       static_cast<double>(model.distributions.size()),
                       "more distributions than contexts"});
    }

    const std::size_t upto = std::min(model.distributions.size(), n);
    for (std::size_t c = 0; c < upto; ++c) {
        const auto& dist = model.distributions[c];
        if (dist.context != static_cast<int>(c)) {
            out.push_back({ModelViolation::Kind::context_mismatch, static_cast<int>(c), -1,
                           static_cast<double>(dist.context),
                           "distribution " + std::to_string(c) + " refers to context " +
                               std::to_string(dist.context)});
            continue;
        }
        const std::size_t want = sc.section_count(static_cast<int>(c));
        if (dist.probabilities.size() != want) {
            out.push_back({ModelViolation::Kind::row_length, static_cast<int>(c), -1,
                           static_cast<double>(dist.probabilities.size()),
                           "row has " + std::to_string(dist.probabilities.size()) +
                               " entries, expected " + std::to_string(want)});
            continue;
        }
        double sum = 0.0;
        for (std::size_t s = 0; s < dist.probabilities.size(); ++s) {
            const double p = dist.probabilities[s];
            if (!std::isfinite(p)) {
                out.push_back({ModelViolation::Kind::not_finite, static_cast<int>(c),
                               static_cast<long>(s), p, "non-finite probability"});
                continue;
            }
            if (p < 0.0)
                out.push_back({ModelViolation::Kind::negative_probability, static_cast<int>(c),
                               static_cast<long>(s), p, "negative probability"});
            sum += p;
        }
        if (std::isfinite(sum) && std::fabs(sum - 1.0) > tol)
            out.push_back({ModelViolation::Kind::normalization, static_cast<int>(c), -1, sum,
                           "row sums to " + std::to_string(sum)});
    }
    return out;
}

EmpiricalModel renormalize(const EmpiricalModel& model) {
    EmpiricalModel out = model;
    for (auto& dist : out.distributions) {
        double sum = 0.0;
        for (double p : dist.probabilities) sum += p;
        if (!(sum > 0.0)) throw std::invalid_argument("renormalize: row sum is not positive");
        for (double& p : dist.probabilities) p /= sum;
    }
    return out;
}

}  // namespace ctxkit
