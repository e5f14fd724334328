#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "heterovar/sample.hpp"

namespace heterovar {

//! K-fold cross-validation configuration. The kernel order applies to the
//! difference-based fit inside the CV loop.
struct CVConfig {
    int folds = 10;
    std::vector<double> h_grid;  // strictly increasing, inside (0, 1/2)
    std::uint64_t seed = 0;
    VarianceMethod method = VarianceMethod::difference_based;
    int order = 2;

    void validate(std::size_t n) const;
};

struct CVScore {
    double h = 0.0;
    double score = 0.0;          // mean held-out squared error; NaN = disqualified
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

struct CVResult {
    double h_selected = 0.0;     // attains the minimal score, smallest-h tie-break
    std::vector<CVScore> scores;
};

struct FanYaoBandwidths {
    double h_mean = 0.0;
    double h_var = 0.0;
    CVResult stage_mean;
    CVResult stage_var;
};

//! 20 log-spaced candidates on [0.5 n^{-1/5}, 5 n^{-1/5}], clamped into
//! [1e-3, 0.45] to respect the h < 1/2 validity limit.
std::vector<double> default_h_grid(std::size_t n, std::size_t count = 20);

//! Uniform random partition of count indices into `folds` folds; a pure
//! function of (count, folds, seed).
std::vector<int> fold_assignment(std::size_t count, int folds, std::uint64_t seed);

//! Bandwidth selection for the difference-based estimator. Targets are
//! half the squared differences at the design midpoints; each candidate h
//! is scored on held-out targets against the fit computed from training
//! bins only (weights renormalized to sum one over training bins).
CVResult kfold_cv_diff(const Sample& sample, const CVConfig& config);

//! Two-stage selection for the residual-based comparator: h_mean minimizes
//! held-out prediction of y, then with full-sample residuals fixed, h_var
//! minimizes held-out prediction of the squared residuals.
FanYaoBandwidths kfold_cv_fanyao(const Sample& sample, const CVConfig& config);

//! Discrete mean squared error n^{-1} sum (Vhat(x_i) - V(x_i))^2. The
//! estimate must be evaluated at the n design points.
double cdmse(const VarianceEstimate& estimate, std::span<const double> truth);

} // namespace heterovar
