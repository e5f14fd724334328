#include <doctest.h>

#include <cmath>
#include <vector>

#include "heterovar/cross_validation.hpp"
#include "heterovar/errors.hpp"
#include "heterovar/local_linear.hpp"
#include "heterovar/rng.hpp"
#include "heterovar/sample.hpp"
#include "heterovar/simulation.hpp"

using namespace heterovar;

namespace {

Sample fixed_sample(std::vector<double> y) {
    Sample s;
    const std::size_t n = y.size();
    s.x.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        s.x[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    s.y = std::move(y);
    s.design = Design::fixed_equidistant;
    return s;
}

//! Cramer-rule solve of the 2x2 normal equations: the oracle the
//! implementations must agree with.
double cramer_intercept(const std::vector<double>& xs, const std::vector<double>& ys,
                        double h, double x0) {
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::fabs(xs[i] - x0) > h) continue;
        const double dx = xs[i] - x0;
        s0 += 1.0;
        s1 += dx;
        s2 += dx * dx;
        t0 += ys[i];
        t1 += ys[i] * dx;
    }
    return (s2 * t0 - s1 * t1) / (s0 * s2 - s1 * s1);
}

} // namespace

TEST_CASE("local linear fit reproduces lines and constants") {
    const std::size_t n = 50;
    std::vector<double> xs(n), lin(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = static_cast<double>(i + 1) / n;
        lin[i] = 2.5 - 1.75 * xs[i];
    }
    for (double h : {0.05, 0.21, 0.45}) {
        for (double x0 : {0.0, 0.08, 0.5, 1.0}) {
            CHECK(local_linear_fit(xs, lin, h, x0) ==
                  doctest::Approx(2.5 - 1.75 * x0).epsilon(1e-9));
        }
    }
    const std::vector<double> cst(n, 3.25);
    CHECK(local_linear_fit(xs, cst, 0.2, 0.4) == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("five-point hand case matches the normal-equation solve") {
    const std::vector<double> xs = {0.1, 0.3, 0.5, 0.7, 0.9};
    const std::vector<double> ys = {1.0, -0.5, 0.25, 2.0, 1.5};
    const double h = 1.0;  // covers all points
    const double expect = cramer_intercept(xs, ys, h, 0.45);
    CHECK(local_linear_fit(xs, ys, h, 0.45) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("point fit, smoother, and oracle agree on random configurations") {
    RandomStream rng(17);
    const std::size_t n = 300;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = static_cast<double>(i + 1) / n;
        ys[i] = std::sin(5.0 * xs[i]) + 0.3 * rng.normal();
    }
    const LocalLinearSmoother smoother(xs, ys);
    for (int trial = 0; trial < 100; ++trial) {
        const double x0 = rng.uniform01();
        const double h = 0.02 + 0.4 * rng.uniform01();
        double direct;
        try {
            direct = local_linear_fit(xs, ys, h, x0);
        } catch (const bandwidth_too_small&) {
            CHECK_THROWS_AS(smoother.fit(h, x0), bandwidth_too_small);
            continue;
        }
        CHECK(smoother.fit(h, x0) == doctest::Approx(direct).epsilon(1e-9));
        CHECK(direct == doctest::Approx(cramer_intercept(xs, ys, h, x0)).epsilon(1e-9));
    }
}

TEST_CASE("undersized windows raise bandwidth_too_small") {
    const std::vector<double> xs = {0.1, 0.5, 0.9};
    const std::vector<double> ys = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(local_linear_fit(xs, ys, 0.05, 0.5), bandwidth_too_small);
    CHECK_THROWS_AS(local_linear_fit(xs, ys, 0.2, 0.0), bandwidth_too_small);
    const LocalLinearSmoother smoother(xs, ys);
    CHECK_THROWS_AS(smoother.fit(0.05, 0.5), bandwidth_too_small);
}

TEST_CASE("fan-yao estimate is zero for exactly linear data") {
    std::vector<double> y(100);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = 4.0 + 2.0 * static_cast<double>(i + 1) / 100.0;
    const Sample s = fixed_sample(y);
    const VarianceEstimate est = fan_yao_variance(s, 0.2, 0.3, s.x, false);
    CHECK(est.method == VarianceMethod::residual_based);
    for (double v : est.values) CHECK(std::fabs(v) < 1e-16);
}

TEST_CASE("fan-yao composes the three documented steps") {
    RandomStream rng(23);
    std::vector<double> y(40);
    for (double& v : y) v = rng.normal();
    const Sample s = fixed_sample(y);
    const double h_mean = 0.25, h_var = 0.35;

    // Manual three-step recomputation.
    std::vector<double> sq_resid(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = s.y[i] - local_linear_fit(s.x, s.y, h_mean, s.x[i]);
        sq_resid[i] = r * r;
        CHECK(sq_resid[i] >= 0.0);  // step-3 inputs are squares
    }
    const std::vector<double> grid = {0.1, 0.5, 0.9};
    const VarianceEstimate est = fan_yao_variance(s, h_mean, h_var, grid, false);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double oracle = local_linear_fit(s.x, sq_resid, h_var, grid[g]);
        CHECK(est.values[g] == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("fan-yao scales quadratically in the response, exactly for powers of two") {
    RandomStream rng(29);
    std::vector<double> y(60);
    for (double& v : y) v = rng.normal();
    const Sample base = fixed_sample(y);
    std::vector<double> doubled = y;
    for (double& v : doubled) v *= 2.0;
    const Sample scaled = fixed_sample(doubled);

    const std::vector<double> grid = {0.2, 0.5, 0.8};
    const VarianceEstimate a = fan_yao_variance(base, 0.2, 0.3, grid, false);
    const VarianceEstimate b = fan_yao_variance(scaled, 0.2, 0.3, grid, false);
    for (std::size_t g = 0; g < grid.size(); ++g) CHECK(b.values[g] == 4.0 * a.values[g]);
}

TEST_CASE("Monte-Carlo calibration: unit variance recovered with CV bandwidths") {
    ExperimentConfig config;
    config.n = 10000;
    config.replications = 200;
    config.master_seed = 71;
    config.functions.mean_id = MeanId::f1;
    config.functions.variance_id = VarianceId::custom;
    config.functions.custom_variance = [](double) { return 1.0; };

    const std::vector<double> grid = {0.5};
    double acc = 0.0;
    for (std::size_t rep = 0; rep < config.replications; ++rep) {
        const Sample s = generate(config, rep);
        CVConfig cv;
        cv.h_grid = default_h_grid(config.n);
        cv.method = VarianceMethod::residual_based;
        cv.seed = derive_seed(config.master_seed, rep, 0xFA);
        const FanYaoBandwidths sel = kfold_cv_fanyao(s, cv);
        acc += fan_yao_variance(s, sel.h_mean, sel.h_var, grid, false).values[0];
    }
    const double mean = acc / static_cast<double>(config.replications);
    CHECK(mean > 0.97);
    CHECK(mean < 1.03);
}
