#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "heterovar/cross_validation.hpp"
#include "heterovar/difference.hpp"
#include "heterovar/kernel.hpp"
#include "heterovar/local_linear.hpp"
#include "heterovar/lower_bound.hpp"
#include "heterovar/sample.hpp"
#include "heterovar/simulation.hpp"

namespace {

heterovar::Sample make_sample(std::size_t n) {
    heterovar::ExperimentConfig config;
    config.n = n;
    config.replications = 1;
    config.master_seed = 1;
    config.functions.mean_id = heterovar::MeanId::f2;
    return heterovar::generate(config, 0);
}

void BinWeights(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double h = std::pow(static_cast<double>(n), -0.2);
    double x = 0.0;
    for (auto _ : state) {
        x += 0.001;
        if (x > 1.0) x = 0.0;
        benchmark::DoNotOptimize(heterovar::bin_weights(2, h, x, n));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BinWeights)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void EstimateVariance(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const heterovar::Sample sample = make_sample(n);
    const double h = std::pow(static_cast<double>(n), -0.2);
    for (auto _ : state)
        benchmark::DoNotOptimize(heterovar::estimate_variance(sample, h, 2, sample.x, false));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(EstimateVariance)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void FanYao(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const heterovar::Sample sample = make_sample(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(heterovar::fan_yao_variance(sample, 0.15, 0.25, sample.x, false));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(FanYao)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void CvDiff(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const heterovar::Sample sample = make_sample(n);
    heterovar::CVConfig cv;
    cv.h_grid = heterovar::default_h_grid(n, 8);
    for (auto _ : state) benchmark::DoNotOptimize(heterovar::kfold_cv_diff(sample, cv));
}
BENCHMARK(CvDiff)->Arg(500)->Arg(1000)->Arg(2000);

void HellingerAffinity(benchmark::State& state) {
    const heterovar::TestingProblem problem =
        heterovar::make_testing_problem(1000, 0.3, static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(heterovar::hellinger_affinity(problem));
}
BENCHMARK(HellingerAffinity)->Arg(3)->Arg(7)->Arg(11);

void MomentDistributionBuild(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(heterovar::moment_distribution(q));
}
BENCHMARK(MomentDistributionBuild)->Arg(3)->Arg(11);

} // namespace

BENCHMARK_MAIN();
