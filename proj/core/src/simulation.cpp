#include "heterovar/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heterovar/difference.hpp"
#include "heterovar/errors.hpp"
#include "heterovar/local_linear.hpp"
#include "heterovar/parallel.hpp"
#include "heterovar/rng.hpp"

namespace heterovar {

namespace {

constexpr std::uint64_t kSaltDesign = 0x01;
constexpr std::uint64_t kSaltFoldsDiff = 0xD1;
constexpr std::uint64_t kSaltFoldsFy = 0xFA;

int kernel_order_for(const FunctionSpec& spec) {
    return std::max(0, static_cast<int>(std::floor(spec.beta)));
}

CVConfig cv_config_for(const ExperimentConfig& config) {
    CVConfig cv = config.cv;
    if (cv.h_grid.empty()) cv.h_grid = default_h_grid(config.n);
    cv.order = kernel_order_for(config.functions);
    return cv;
}

} // namespace

void ExperimentConfig::validate() const {
    if (n < 10) throw invalid_config("experiment: n must be >= 10, got " + std::to_string(n));
    if (replications < 1) throw invalid_config("experiment: replications must be >= 1");
    if (!cv.h_grid.empty()) cv.validate(n);
}

Sample generate(const ExperimentConfig& config, std::size_t replication_index) {
    config.validate();
    RandomStream stream(derive_seed(config.master_seed, replication_index, kSaltDesign));

    Sample sample;
    sample.design = config.design;
    sample.x.resize(config.n);
    if (config.design == Design::fixed_equidistant) {
        for (std::size_t i = 0; i < config.n; ++i)
            sample.x[i] = static_cast<double>(i + 1) / static_cast<double>(config.n);
    } else {
        for (std::size_t i = 0; i < config.n; ++i) sample.x[i] = stream.uniform01();
        std::sort(sample.x.begin(), sample.x.end());
    }

    sample.y.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        const double v = config.functions.variance(sample.x[i]);
        if (v < 0.0) throw invalid_config("experiment: variance function is negative at x = " +
                                          std::to_string(sample.x[i]));
        const double z = config.noise == NoiseFamily::gaussian ? stream.normal()
                                                               : stream.two_point();
        sample.y[i] = config.functions.mean(sample.x[i]) + std::sqrt(v) * z;
    }
    sample.validate();
    return sample;
}

double median(std::vector<double> values) {
    if (values.empty()) throw invalid_config("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    if (m % 2 == 1) return values[m / 2];
    return 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

std::pair<double, double> quartiles(std::vector<double> values) {
    if (values.empty()) throw invalid_config("quartiles of an empty set");
    std::sort(values.begin(), values.end());
    const auto at = [&](double p) {
        const double pos = p * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        if (lo + 1 >= values.size()) return values.back();
        return values[lo] + frac * (values[lo + 1] - values[lo]);
    };
    return {at(0.25), at(0.75)};
}

std::pair<double, double> fit_line(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw invalid_config("line fit needs at least 2 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [px, py] : points) {
        sx += px;
        sy += py;
        sxx += px * px;
        sxy += px * py;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw invalid_config("line fit degenerate: identical abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    return {slope, (sy - slope * sx) / n};
}

ExperimentSummary run_table1(const ExperimentConfig& config) {
    config.validate();
    const CVConfig cv_base = cv_config_for(config);
    const int order = kernel_order_for(config.functions);

    ExperimentSummary summary;
    summary.per_replication.resize(2 * config.replications);

    parallel_for(config.replications, [&](std::size_t rep) {
        RepRecord diff_rec{rep, VarianceMethod::difference_based, 0.0, 0.0, 0.0, {}};
        RepRecord fy_rec{rep, VarianceMethod::residual_based, 0.0, 0.0, 0.0, {}};
        try {
            const Sample sample = generate(config, rep);
            std::vector<double> truth(config.n);
            for (std::size_t i = 0; i < config.n; ++i)
                truth[i] = config.functions.variance(sample.x[i]);

            try {
                CVConfig cv = cv_base;
                cv.method = VarianceMethod::difference_based;
                cv.seed = derive_seed(config.master_seed, rep, kSaltFoldsDiff);
                const CVResult sel = kfold_cv_diff(sample, cv);
                const VarianceEstimate est =
                    estimate_variance(sample, sel.h_selected, order, sample.x, false);
                diff_rec.h = sel.h_selected;
                diff_rec.cdmse = cdmse(est, truth);
            } catch (const std::exception& e) {
                diff_rec.error = e.what();
            }

            try {
                CVConfig cv = cv_base;
                cv.method = VarianceMethod::residual_based;
                cv.seed = derive_seed(config.master_seed, rep, kSaltFoldsFy);
                const FanYaoBandwidths sel = kfold_cv_fanyao(sample, cv);
                const VarianceEstimate est =
                    fan_yao_variance(sample, sel.h_mean, sel.h_var, sample.x, false);
                fy_rec.h = sel.h_var;
                fy_rec.h_mean = sel.h_mean;
                fy_rec.cdmse = cdmse(est, truth);
            } catch (const std::exception& e) {
                fy_rec.error = e.what();
            }
        } catch (const std::exception& e) {
            diff_rec.error = e.what();
            fy_rec.error = e.what();
        }
        summary.per_replication[2 * rep] = std::move(diff_rec);
        summary.per_replication[2 * rep + 1] = std::move(fy_rec);
    });

    for (VarianceMethod m : {VarianceMethod::difference_based, VarianceMethod::residual_based}) {
        std::vector<double> losses;
        std::size_t failed = 0;
        for (const RepRecord& r : summary.per_replication) {
            if (r.method != m) continue;
            if (!r.error.empty()) {
                ++failed;
                continue;
            }
            losses.push_back(r.cdmse);
        }
        MethodSummary ms;
        ms.failed = failed;
        ms.succeeded = losses.size();
        if (!losses.empty()) {
            ms.median = median(losses);
            std::tie(ms.q1, ms.q3) = quartiles(losses);
        }
        summary.by_method[method_name(m)] = ms;
    }
    return summary;
}

RateStudyResult rate_study(std::span<const std::size_t> ns, const ExperimentConfig& config,
                           double h_exponent) {
    if (ns.size() < 3)
        throw invalid_config("rate study: need at least 3 sample sizes, got " +
                             std::to_string(ns.size()));
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 50) throw invalid_config("rate study: every n must be >= 50");
        if (i > 0 && ns[i] <= ns[i - 1])
            throw invalid_config("rate study: sample sizes must be strictly increasing");
    }
    const int order = kernel_order_for(config.functions);

    std::vector<std::vector<double>> losses(ns.size());
    for (auto& v : losses) v.resize(config.replications);

    parallel_for(ns.size() * config.replications, [&](std::size_t cell) {
        const std::size_t size_idx = cell / config.replications;
        const std::size_t rep = cell % config.replications;
        ExperimentConfig local = config;
        local.n = ns[size_idx];
        // Streams are salted by n so each cell is independent of the list layout.
        local.master_seed = derive_seed(config.master_seed, ns[size_idx], 0x57);
        const Sample sample = generate(local, rep);
        const double h = std::pow(static_cast<double>(local.n), h_exponent);
        if (!(h > 0.0) || h >= 0.5)
            throw invalid_config("rate study: h rule gives h outside (0, 1/2) at n = " +
                                 std::to_string(local.n));
        std::vector<double> truth(local.n);
        for (std::size_t i = 0; i < local.n; ++i)
            truth[i] = local.functions.variance(sample.x[i]);
        const VarianceEstimate est = estimate_variance(sample, h, order, sample.x, false);
        losses[size_idx][rep] = cdmse(est, truth);
    });

    RateStudyResult result;
    result.points.reserve(ns.size());
    for (std::size_t k = 0; k < ns.size(); ++k)
        result.points.emplace_back(std::log(static_cast<double>(ns[k])),
                                   std::log(median(losses[k])));
    std::tie(result.slope, result.intercept) = fit_line(result.points);
    return result;
}

} // namespace heterovar
