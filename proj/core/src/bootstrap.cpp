#include "ctxkit/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ctxkit/cbd.hpp"
#include "ctxkit/measures.hpp"
#include "ctxkit/rng.hpp"

namespace ctxkit {

const char* to_string(BootstrapMeasure measure) {
    switch (measure) {
        case BootstrapMeasure::cyclic_violation: return "cyclic_violation";
        case BootstrapMeasure::cf: return "cf";
        case BootstrapMeasure::cnt1: return "cnt1";
    }
    return "?";
}

namespace {

EmpiricalModel resample_with(const EmpiricalModel& model, std::span<const std::uint64_t> counts,
                             Xoshiro256ss& rng) {
    EmpiricalModel out = model;
    for (std::size_t c = 0; c < model.distributions.size(); ++c) {
        const auto& row = model.distributions[c].probabilities;
        std::vector<double> cdf(row.size());
        double running = 0.0;
        for (std::size_t s = 0; s < row.size(); ++s) {
            running += row[s];
            cdf[s] = running;
        }
        std::vector<std::uint64_t> freq(row.size(), 0);
        for (std::uint64_t k = 0; k < counts[c]; ++k) {
            const double u = rng.uniform() * running;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;  // guards the running-sum roundoff edge
            ++freq[static_cast<std::size_t>(it - cdf.begin())];
        }
        auto& dst = out.distributions[c].probabilities;
        for (std::size_t s = 0; s < row.size(); ++s)
            dst[s] = static_cast<double>(freq[s]) / static_cast<double>(counts[c]);
    }
    return out;
}

double eval_measure(const EmpiricalModel& model, BootstrapMeasure measure) {
    switch (measure) {
        case BootstrapMeasure::cyclic_violation: return cyclic_violation(model).violation;
        case BootstrapMeasure::cf: return contextual_fraction(model).cf;
        case BootstrapMeasure::cnt1: return classify_cbd(model).cnt1;
    }
    throw std::logic_error("unknown bootstrap measure");
}

void check_counts(const EmpiricalModel& model, std::span<const std::uint64_t> counts) {
    if (counts.size() != model.distributions.size())
        throw std::invalid_argument("counts length does not match the context count");
    for (std::uint64_t c : counts)
        if (c == 0) throw std::invalid_argument("per-context counts must be at least 1");
}

}  // namespace

EmpiricalModel resample(const EmpiricalModel& model, std::span<const std::uint64_t> counts,
                        std::uint64_t seed) {
    check_counts(model, counts);
    Xoshiro256ss rng(seed);
    return resample_with(model, counts, rng);
}

BootstrapResult bootstrap(const EmpiricalModel& model, const BootstrapConfig& config) {
    check_counts(model, config.counts);
    if (config.n_samples == 0) throw std::invalid_argument("n_samples must be at least 1");
    if (config.histogram_bins == 0) throw std::invalid_argument("histogram needs at least 1 bin");
    eval_measure(model, config.measure);  // fail fast if the measure does not apply

    std::vector<double> values;
    values.reserve(config.n_samples);
    for (std::size_t i = 0; i < config.n_samples; ++i) {
        Xoshiro256ss rng(derive_seed(config.seed, i));
        const EmpiricalModel sample = resample_with(model, config.counts, rng);
        values.push_back(eval_measure(sample, config.measure));
    }

    BootstrapResult result;
    result.n_samples = config.n_samples;
    result.seed = config.seed;

    double sum = 0.0;
    std::size_t positive = 0;
    result.min = values.front();
    result.max = values.front();
    for (double v : values) {
        sum += v;
        if (v > 0.0) ++positive;
        result.min = std::min(result.min, v);
        result.max = std::max(result.max, v);
    }
    result.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - result.mean) * (v - result.mean);
    result.stddev = values.size() > 1
                        ? std::sqrt(ss / static_cast<double>(values.size() - 1))
                        : 0.0;
    result.fraction_positive =
        static_cast<double>(positive) / static_cast<double>(values.size());

    double lo = result.min;
    double hi = result.max;
    if (!(hi > lo)) {  // degenerate spread, e.g. a deterministic model
        lo -= 0.5;
        hi += 0.5;
    }
    const std::size_t bins = config.histogram_bins;
    result.histogram.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        result.histogram.edges[b] =
            lo + (hi - lo) * (static_cast<double>(b) / static_cast<double>(bins));
    result.histogram.counts.assign(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double v : values) {
        auto b = static_cast<long>((v - lo) / width);
        b = std::clamp(b, 0L, static_cast<long>(bins) - 1);
        ++result.histogram.counts[static_cast<std::size_t>(b)];
    }
    return result;
}

}  // namespace ctxkit
