#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heterovar/cross_validation.hpp"
#include "heterovar/functions.hpp"
#include "heterovar/sample.hpp"

namespace heterovar {

enum class NoiseFamily { gaussian, two_point };

//! Declarative Monte-Carlo study description. Every random draw inside a
//! replication is a pure function of (master_seed, replication index), so
//! summaries do not depend on scheduling or thread counts.
struct ExperimentConfig {
    std::size_t n = 1000;
    std::size_t replications = 100;
    FunctionSpec functions;
    NoiseFamily noise = NoiseFamily::gaussian;
    Design design = Design::fixed_equidistant;
    CVConfig cv;  // empty h_grid means the default grid for n
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct RepRecord {
    std::size_t rep = 0;
    VarianceMethod method = VarianceMethod::difference_based;
    double h = 0.0;       // smoothing bandwidth (variance stage for fanyao)
    double h_mean = 0.0;  // mean-stage bandwidth, fanyao only
    double cdmse = 0.0;
    std::string error;    // nonempty when the replication failed
};

struct MethodSummary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    std::size_t succeeded = 0;
    std::size_t failed = 0;
};

struct ExperimentSummary {
    std::vector<RepRecord> per_replication;
    std::map<std::string, MethodSummary> by_method;  // keyed by method_name()
};

//! Dataset for one replication: fixed design x_i = i/n or sorted uniforms,
//! y_i = f(x_i) + sqrt(V(x_i)) z_i. The noise families have mean zero, unit
//! variance and finite fourth moment.
Sample generate(const ExperimentConfig& config, std::size_t replication_index);

//! The finite-sample comparison: per replication, CV-selected bandwidths for
//! both the difference-based and the residual-based estimators, CDMSE
//! against the true variance at the design points, aggregated per method.
//! Failed replications are recorded with an error tag and excluded from the
//! aggregates.
ExperimentSummary run_table1(const ExperimentConfig& config);

struct RateStudyResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<std::pair<double, double>> points;  // (log n, log median cdmse)
};

//! Median CDMSE of the difference-based estimator with h = n^{h_exponent}
//! across sample sizes, and the least-squares slope on the log-log scale.
RateStudyResult rate_study(std::span<const std::size_t> ns, const ExperimentConfig& config,
                           double h_exponent);

//! Sample median / interquartile points (linear interpolation between order
//! statistics). Exposed so aggregates stay recomputable from records.
double median(std::vector<double> values);
std::pair<double, double> quartiles(std::vector<double> values);

//! Least-squares slope and intercept of y on x.
std::pair<double, double> fit_line(std::span<const std::pair<double, double>> points);

} // namespace heterovar
