#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctxkit/model.hpp"

namespace ctxkit {

enum class BootstrapMeasure { cyclic_violation, cf, cnt1 };

const char* to_string(BootstrapMeasure measure);

struct BootstrapConfig {
    std::size_t n_samples = 100000;
    std::vector<std::uint64_t> counts;  // per-context sample sizes, all >= 1
    std::uint64_t seed = 0;
    BootstrapMeasure measure = BootstrapMeasure::cyclic_violation;
    std::size_t histogram_bins = 40;
};

struct Histogram {
    std::vector<double> edges;           // bins + 1 ascending edges
    std::vector<std::uint64_t> counts;   // per bin, summing to n_samples
};

struct BootstrapResult {
    std::size_t n_samples = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    double min = 0.0;
    double max = 0.0;
    double fraction_positive = 0.0;
    Histogram histogram;
    std::uint64_t seed = 0;
};

/// Multinomial resample: draws counts[C] i.i.d. sections from each context
/// distribution by inverse CDF in canonical section order and returns the
/// empirical frequencies. Deterministic for a fixed seed. Throws on zero
/// counts or a counts/context mismatch.
EmpiricalModel resample(const EmpiricalModel& model, std::span<const std::uint64_t> counts,
                        std::uint64_t seed);

/// n_samples independent resamples with per-sample seeds derived as
/// derive_seed(config.seed, i); the chosen scalar measure is recomputed on
/// each and summarized. Bit-identical output for identical inputs.
BootstrapResult bootstrap(const EmpiricalModel& model, const BootstrapConfig& config);

}  // namespace ctxkit
