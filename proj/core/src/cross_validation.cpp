#include "heterovar/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heterovar/difference.hpp"
#include "heterovar/errors.hpp"
#include "heterovar/kernel.hpp"
#include "heterovar/local_linear.hpp"
#include "heterovar/rng.hpp"

namespace heterovar {

namespace {

constexpr double kMinTrainingMass = 1e-8;

double select_h(const std::vector<CVScore>& scores) {
    double best_h = 0.0;
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (const CVScore& s : scores) {       // ascending h, strict < keeps the
        if (!std::isfinite(s.score)) continue;  // smallest h on ties
        if (s.score < best) {
            best = s.score;
            best_h = s.h;
            found = true;
        }
    }
    if (!found) throw invalid_config("cross-validation: every candidate bandwidth was disqualified");
    return best_h;
}

} // namespace

void CVConfig::validate(std::size_t n) const {
    if (folds < 2) throw invalid_config("cv: folds must be >= 2, got " + std::to_string(folds));
    if (static_cast<std::size_t>(folds) > n)
        throw invalid_config("cv: folds exceed the sample size");
    if (h_grid.empty()) throw invalid_config("cv: h_grid is empty");
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        if (!(h_grid[i] > 0.0) || h_grid[i] >= 0.5)
            throw invalid_config("cv: h_grid entries must lie in (0, 1/2)");
        if (i > 0 && !(h_grid[i] > h_grid[i - 1]))
            throw invalid_config("cv: h_grid must be strictly increasing");
    }
    if (order < 0) throw invalid_config("cv: kernel order must be nonnegative");
}

std::vector<double> default_h_grid(std::size_t n, std::size_t count) {
    if (n < 3) throw invalid_config("default h grid needs n >= 3");
    if (count < 2) throw invalid_config("default h grid needs at least 2 candidates");
    const double rate = std::pow(static_cast<double>(n), -0.2);
    const double lo = std::max(0.5 * rate, 1e-3);
    const double hi = std::min(5.0 * rate, 0.45);
    if (!(lo < hi)) throw invalid_config("default h grid degenerate for n = " + std::to_string(n));
    std::vector<double> grid(count);
    const double ratio = hi / lo;
    for (std::size_t k = 0; k < count; ++k)
        grid[k] = lo * std::pow(ratio, static_cast<double>(k) / static_cast<double>(count - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<int> fold_assignment(std::size_t count, int folds, std::uint64_t seed) {
    if (folds < 2) throw invalid_config("fold assignment needs folds >= 2");
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    // Fisher-Yates with our own bounded draws; std::shuffle is not pinned
    // across standard libraries.
    RandomStream rng(derive_seed(seed, 0, 0x0F01Dull));
    for (std::size_t i = count; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(idx[i - 1], idx[j]);
    }
    std::vector<int> fold(count, 0);
    for (std::size_t i = 0; i < count; ++i)
        fold[idx[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    return fold;
}

CVResult kfold_cv_diff(const Sample& sample, const CVConfig& config) {
    sample.validate();
    config.validate(sample.size());
    if (config.method != VarianceMethod::difference_based)
        throw invalid_config("kfold_cv_diff: config.method must be difference-based");

    const std::size_t m = sample.size() - 1;  // one target per difference
    const DifferenceSeries diffs = difference_series(sample);
    std::vector<double> target(m);
    std::vector<double> midpoint(m);
    for (std::size_t i = 0; i < m; ++i) {
        target[i] = 0.5 * diffs.d[i] * diffs.d[i];
        midpoint[i] = 0.5 * (sample.x[i] + sample.x[i + 1]);
    }

    const std::span<const double> centers(sample.x.data(), m);
    const std::vector<double> edges = detail::bin_edges(centers);
    const Kernel interior = make_interior_kernel(config.order);
    const std::vector<int> fold = fold_assignment(m, config.folds, config.seed);

    CVResult result;
    result.scores.reserve(config.h_grid.size());
    std::vector<double> weights(m);
    for (double h : config.h_grid) {
        CVScore entry;
        entry.h = h;
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            detail::bin_weights_into(interior, h, midpoint[i], edges, weights);
            const int held = fold[i];
            double mass = 0.0, fit = 0.0;
            bool positive_train = false;
            for (std::size_t j = 0; j < m; ++j) {
                const double w = weights[j];
                if (w == 0.0 || fold[j] == held) continue;
                if (w > 0.0) positive_train = true;
                mass += w;
                fit += w * target[j];
            }
            if (!positive_train || mass <= kMinTrainingMass) {
                ++entry.skipped;
                continue;
            }
            const double err = target[i] - fit / mass;
            total += err * err;
            ++entry.evaluated;
        }
        entry.score = entry.evaluated > 0
                          ? total / static_cast<double>(entry.evaluated)
                          : std::numeric_limits<double>::quiet_NaN();
        result.scores.push_back(entry);
    }
    result.h_selected = select_h(result.scores);
    return result;
}

namespace {

//! One CV stage of the residual-based method: held-out squared prediction
//! error of a local-linear smooth of `response` against the design.
CVResult ll_cv_stage(std::span<const double> xs, std::span<const double> response,
                     const std::vector<int>& fold, int folds,
                     std::span<const double> h_grid) {
    const std::size_t n = xs.size();
    // Per-fold training subsets are h-independent; build the smoothers once.
    std::vector<LocalLinearSmoother> train;
    train.reserve(static_cast<std::size_t>(folds));
    std::vector<double> tx, ty;
    for (int f = 0; f < folds; ++f) {
        tx.clear();
        ty.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (fold[i] == f) continue;
            tx.push_back(xs[i]);
            ty.push_back(response[i]);
        }
        train.emplace_back(tx, ty);
    }

    CVResult result;
    result.scores.reserve(h_grid.size());
    for (double h : h_grid) {
        CVScore entry;
        entry.h = h;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fit;
            try {
                fit = train[static_cast<std::size_t>(fold[i])].fit(h, xs[i]);
            } catch (const bandwidth_too_small&) {
                ++entry.skipped;
                continue;
            }
            const double err = response[i] - fit;
            total += err * err;
            ++entry.evaluated;
        }
        entry.score = entry.evaluated > 0
                          ? total / static_cast<double>(entry.evaluated)
                          : std::numeric_limits<double>::quiet_NaN();
        result.scores.push_back(entry);
    }
    result.h_selected = select_h(result.scores);
    return result;
}

} // namespace

FanYaoBandwidths kfold_cv_fanyao(const Sample& sample, const CVConfig& config) {
    sample.validate();
    config.validate(sample.size());
    if (config.method != VarianceMethod::residual_based)
        throw invalid_config("kfold_cv_fanyao: config.method must be residual-based");

    const std::size_t n = sample.size();
    const std::vector<int> fold = fold_assignment(n, config.folds, config.seed);

    FanYaoBandwidths out;
    out.stage_mean = ll_cv_stage(sample.x, sample.y, fold, config.folds, config.h_grid);
    out.h_mean = out.stage_mean.h_selected;

    // Full-sample residuals at the selected mean bandwidth.
    const LocalLinearSmoother mean_fit(sample.x, sample.y);
    std::vector<double> sq_resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = sample.y[i] - mean_fit.fit(out.h_mean, sample.x[i]);
        sq_resid[i] = r * r;
    }

    out.stage_var = ll_cv_stage(sample.x, sq_resid, fold, config.folds, config.h_grid);
    out.h_var = out.stage_var.h_selected;
    return out;
}

double cdmse(const VarianceEstimate& estimate, std::span<const double> truth) {
    if (estimate.values.size() != truth.size())
        throw invalid_config("cdmse: estimate has " + std::to_string(estimate.values.size()) +
                             " values but truth has " + std::to_string(truth.size()));
    if (truth.empty()) throw invalid_config("cdmse: empty input");
    double total = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = estimate.values[i] - truth[i];
        total += d * d;
    }
    return total / static_cast<double>(truth.size());
}

} // namespace heterovar
