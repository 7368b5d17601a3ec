#include <benchmark/benchmark.h>

#include <random>

#include "ctxkit/bootstrap.hpp"
#include "ctxkit/cbd.hpp"
#include "ctxkit/lp.hpp"
#include "ctxkit/measures.hpp"
#include "ctxkit/presets.hpp"

namespace {

void BM_ContextualFraction_Bell(benchmark::State& state) {
    const auto model = ctxkit::bell_model();
    for (auto _ : state) benchmark::DoNotOptimize(ctxkit::contextual_fraction(model).cf);
}
BENCHMARK(BM_ContextualFraction_Bell);

void BM_ContextualFraction_Sahara(benchmark::State& state) {
    const auto model = ctxkit::sahara_model(true);
    for (auto _ : state) benchmark::DoNotOptimize(ctxkit::contextual_fraction(model).cf);
}
BENCHMARK(BM_ContextualFraction_Sahara);

void BM_SignallingFraction_Sahara(benchmark::State& state) {
    const auto model = ctxkit::sahara_model(true);
    for (auto _ : state) benchmark::DoNotOptimize(ctxkit::signalling_fraction(model).sf);
}
BENCHMARK(BM_SignallingFraction_Sahara);

void BM_CyclicViolation_Sahara(benchmark::State& state) {
    const auto model = ctxkit::sahara_model(true);
    for (auto _ : state) benchmark::DoNotOptimize(ctxkit::cyclic_violation(model).violation);
}
BENCHMARK(BM_CyclicViolation_Sahara);

void BM_ClassifyCbd_Sahara(benchmark::State& state) {
    const auto model = ctxkit::sahara_model(true);
    for (auto _ : state) benchmark::DoNotOptimize(ctxkit::classify_cbd(model).cnt1);
}
BENCHMARK(BM_ClassifyCbd_Sahara);

void BM_Resample_Sahara(benchmark::State& state) {
    const auto model = ctxkit::sahara_model(true);
    const std::vector<std::uint64_t> counts(4, 87);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ctxkit::resample(model, counts, seed++));
}
BENCHMARK(BM_Resample_Sahara);

void BM_Bootstrap_Sahara_1k(benchmark::State& state) {
    const auto model = ctxkit::sahara_model(true);
    ctxkit::BootstrapConfig config;
    config.n_samples = 1000;
    config.counts.assign(4, 87);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctxkit::bootstrap(model, config).mean);
        ++config.seed;
    }
}
BENCHMARK(BM_Bootstrap_Sahara_1k);

void BM_SimplexSolve_Random(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    ctxkit::LpProblem p;
    p.objective.resize(n);
    for (double& v : p.objective) v = coeff(rng);
    p.ineq_matrix.assign(n, std::vector<double>(n));
    p.ineq_rhs.assign(n, 1.0);
    for (auto& row : p.ineq_matrix)
        for (double& v : row) v = coeff(rng);
    for (std::size_t j = 0; j < n; ++j) {  // box to keep it bounded
        std::vector<double> row(n, 0.0);
        row[j] = 1.0;
        p.ineq_matrix.push_back(std::move(row));
        p.ineq_rhs.push_back(1.0);
    }
    for (auto _ : state) benchmark::DoNotOptimize(ctxkit::solve_max(p).objective_value);
}
BENCHMARK(BM_SimplexSolve_Random)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
