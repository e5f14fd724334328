#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "heterovar/errors.hpp"
#include "heterovar/lower_bound.hpp"
#include "heterovar/quadrature.hpp"
#include "heterovar/rng.hpp"

using namespace heterovar;

namespace {

constexpr double kPi = 3.14159265358979323846;

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / (2.0 * panels);
    double acc = f(a) + f(b);
    for (int k = 1; k < 2 * panels; ++k) acc += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

TEST_CASE("moment-matched distributions for small q") {
    const MomentDistribution g3 = moment_distribution(3);
    REQUIRE(g3.nodes.size() == 2);
    CHECK(g3.nodes[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(g3.nodes[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(g3.weights[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(g3.weights[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(g3.B == doctest::Approx(1.0).epsilon(1e-13));

    // Hand solve of {sum w v^2 = 1, sum w v^4 = 3} for a symmetric 3-point
    // measure with an atom at zero: nodes +-sqrt(3), weights 1/6, 2/3, 1/6.
    const MomentDistribution g5 = moment_distribution(5);
    REQUIRE(g5.nodes.size() == 3);
    CHECK(g5.nodes[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    CHECK(g5.nodes[1] == 0.0);
    CHECK(g5.nodes[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(g5.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(g5.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(g5.weights[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("normal moments are matched through order q") {
    for (int q : {3, 5, 7, 9, 11}) {
        const MomentDistribution g = moment_distribution(q);
        double total = 0.0;
        for (double w : g.weights) {
            CHECK(w > 0.0);
            total += w;
        }
        CHECK(std::fabs(total - 1.0) < 1e-12);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            CHECK(g.nodes[i] == -g.nodes[g.nodes.size() - 1 - i]);  // exact symmetry
            CHECK(g.weights[i] == g.weights[g.nodes.size() - 1 - i]);
            CHECK(std::fabs(g.nodes[i]) <= g.B);
        }
        for (int j = 1; j <= q; ++j)
            CHECK(std::fabs(g.moment(j) - normal_moment(j)) < 1e-8);
    }
    CHECK(normal_moment(6) == 15.0);
    CHECK(normal_moment(10) == 945.0);
    CHECK(normal_moment(7) == 0.0);
}

TEST_CASE("moment distribution input validation") {
    CHECK_THROWS_AS(moment_distribution(0), invalid_config);
    CHECK_THROWS_AS(moment_distribution(2), invalid_config);
    CHECK_THROWS_AS(moment_distribution(-3), invalid_config);
}

TEST_CASE("smallest valid q per alpha") {
    CHECK(smallest_valid_q(0.15) == 7);
    CHECK(smallest_valid_q(0.3) == 3);
    CHECK(smallest_valid_q(0.24) == 5);
    CHECK(smallest_valid_q(0.9) == 1);
    CHECK_THROWS_AS(smallest_valid_q(0.0), invalid_config);
}

TEST_CASE("null and mixture densities") {
    CHECK(null_density(0.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-15));
    CHECK(null_density(1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-15));
    CHECK(integrate([](double t) { return null_density(0.7, t); }, -12.0, 12.0, 1e-12).value ==
          doctest::Approx(1.0).epsilon(1e-10));

    const MomentDistribution g = moment_distribution(5);
    for (double t : {-2.0, -0.3, 0.0, 1.1}) {
        CHECK(mixture_density(g, 0.0, t) ==
              doctest::Approx(null_density(0.0, t)).epsilon(1e-14));
        CHECK(mixture_density(g, 0.4, t) ==
              doctest::Approx(mixture_density(g, 0.4, -t)).epsilon(1e-14));
    }
    CHECK(integrate([&](double t) { return mixture_density(g, 0.8, t); }, -14.0, 14.0,
                    1e-12).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("single-sample affinity against an independent fixed-grid oracle") {
    const MomentDistribution g = moment_distribution(5);

    CHECK(single_sample_affinity(g, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    const double theta = 0.3;
    const double oracle = simpson(
        [&](double t) {
            return std::sqrt(null_density(theta, t) * mixture_density(g, theta, t));
        },
        -12.0, 12.0, 200000);
    CHECK(single_sample_affinity(g, theta) == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(single_sample_deficit(g, theta) > 0.0);
}

TEST_CASE("affinity is nonincreasing in theta and rho lives in (0, 1]") {
    const MomentDistribution g = moment_distribution(5);
    double prev = 1.0;
    for (double theta : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        const double a = single_sample_affinity(g, theta);
        CHECK(a > 0.0);
        CHECK(a <= 1.0);
        CHECK(a <= prev + 1e-9);
        prev = a;
    }

    for (std::size_t n : {std::size_t(100), std::size_t(1000), std::size_t(10000)}) {
        const TestingProblem p = make_testing_problem(n, 0.3, 5, 1.0);
        const double rho = hellinger_affinity(p);
        CHECK(rho > 0.0);
        CHECK(rho <= 1.0);
    }
    // theta = 0 means identical hypotheses at any n.
    TestingProblem same = make_testing_problem(50, 0.3, 5, 1.0);
    same.theta = 0.0;
    CHECK(hellinger_affinity(same) == 1.0);
}

TEST_CASE("rho grows toward one along the theta_n schedule") {
    double prev = 0.0;
    for (std::size_t n : {std::size_t(100), std::size_t(1000), std::size_t(10000)}) {
        const TestingProblem p = make_testing_problem(n, 0.3, 5, 1.0);
        CHECK(p.theta ==
              doctest::Approx(1.0 / (2.0 * p.G.B) * std::pow(double(n), -0.3)).epsilon(1e-14));
        const double rho = hellinger_affinity(p);
        CHECK(rho >= prev);
        prev = rho;
    }
    CHECK(prev > 0.9);
}

TEST_CASE("the odd-integrand correction term vanishes for every d") {
    for (double d : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0})
        CHECK(std::fabs(hc_integral(d)) < 1e-10);
    CHECK_THROWS_AS(hc_integral(0.0), invalid_config);
    CHECK_THROWS_AS(hc_integral(-1.0), invalid_config);

    // The integrand itself is odd: f(x) + f(-x) = 0 exactly.
    const double d = 3.0;
    const auto f = [&](double x) {
        return x / (std::exp(0.5 * x) + std::exp(-0.5 * x)) *
               std::exp(-x * x / (2.0 * d) - d / 8.0) / std::sqrt(2.0 * kPi * d);
    };
    RandomStream rng(1);
    for (int k = 0; k < 50; ++k) {
        const double x = 10.0 * (rng.uniform01() - 0.5);
        CHECK(f(x) + f(-x) == 0.0);
    }
}

TEST_CASE("adversarial mean: bumps, bounds, determinism") {
    const std::size_t n = 500;
    const double alpha = 0.15;
    const int q = 7;
    const double M_f = 1.0;
    const AdversarialMean f = adversarial_mean(n, alpha, q, M_f, 77);
    const AdversarialMean f_again = adversarial_mean(n, alpha, q, M_f, 77);
    const MomentDistribution g = moment_distribution(q);
    const double theta = M_f / (2.0 * g.B) * std::pow(double(n), -alpha);

    CHECK(f.theta() == doctest::Approx(theta).epsilon(1e-14));
    const double half_bump = 1.0 / (2.0 * double(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = double(i + 1) / double(n);
        CHECK(f(xi) == f.design_values()[i]);  // g(0) = 1
        // g vanishes at +-1/(2n) from the center, up to rounding in x*n.
        if (xi - half_bump >= 0.0) CHECK(std::fabs(f(xi - half_bump)) < 1e-12);
        if (xi + half_bump <= 1.0) CHECK(std::fabs(f(xi + half_bump)) < 1e-12);
        CHECK(f.design_values()[i] == f_again.design_values()[i]);

        // Heights are theta * (node of G).
        bool is_node = false;
        for (double v : g.nodes)
            is_node = is_node || std::fabs(f.design_values()[i] - theta * v) < 1e-15;
        CHECK(is_node);
    }

    // Sup bound and sampled Hoelder quotient.
    RandomStream rng(3);
    double worst_quotient = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double a = rng.uniform01();
        const double b = rng.uniform01();
        CHECK(std::fabs(f(a)) <= theta * g.B + 1e-12);
        if (a == b) continue;
        worst_quotient = std::max(
            worst_quotient, std::fabs(f(a) - f(b)) / std::pow(std::fabs(a - b), alpha));
    }
    CHECK(worst_quotient <= M_f * (1.0 + 1e-10));

    CHECK_THROWS_AS(adversarial_mean(n, 0.1, 7, M_f, 1), invalid_config);  // (q+1)a <= 1
    CHECK_THROWS_AS(adversarial_mean(2, alpha, q, M_f, 1), invalid_config);
}

TEST_CASE("expected slope helper picks the dominant branch") {
    CHECK(expected_rate_slope(0.15) == -0.6);
    CHECK(expected_rate_slope(0.1) == doctest::Approx(-0.4).epsilon(1e-15));
    // Just below 1/4 the two branches are indistinguishable from the
    // variance branch, which caps the exponent at -4/5.
    CHECK(expected_rate_slope(0.24) == -0.8);
    CHECK(expected_rate_slope(0.3) == -0.8);
    CHECK(expected_rate_slope(0.0) == -0.8);  // control
    CHECK_THROWS_AS(expected_rate_slope(-0.1), invalid_config);
}

TEST_CASE("lower bound experiment validation and shape") {
    LowerBoundConfig config;
    config.replications = 2;
    const std::vector<double> alphas = {0.15};
    const std::vector<std::size_t> ns3 = {100, 200, 400};
    const LowerBoundResult r = lower_bound_experiment(alphas, ns3, config, true);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].q == 7);  // auto-selected smallest valid q
    CHECK(r.entries[0].points.size() == 3);
    CHECK(r.entries[0].expected_slope == -0.6);
    CHECK(r.has_control);
    CHECK(r.control.expected_slope == -0.8);

    const std::vector<std::size_t> ns2 = {100, 200};
    CHECK_THROWS_AS(lower_bound_experiment(alphas, ns2, config), invalid_config);
    const std::vector<double> none = {};
    CHECK_THROWS_AS(lower_bound_experiment(none, ns3, config), invalid_config);
}
