#include "heterovar/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heterovar/difference.hpp"
#include "heterovar/errors.hpp"
#include "heterovar/parallel.hpp"
#include "heterovar/quadrature.hpp"
#include "heterovar/rng.hpp"
#include "heterovar/sample.hpp"
#include "heterovar/simulation.hpp"

namespace heterovar {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double phi(double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

//! Probabilists' Hermite polynomial He_m by the three-term recurrence.
double hermite(int m, double x) {
    double prev = 1.0, cur = x;
    if (m == 0) return prev;
    for (int k = 1; k < m; ++k) {
        const double next = x * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

//! Positive roots of He_m via interlacing: the roots of He_{m-1} split the
//! real line into brackets each holding exactly one root of He_m.
std::vector<double> hermite_roots(int m) {
    std::vector<double> roots{};  // roots of He_1
    roots.push_back(0.0);
    for (int k = 2; k <= m; ++k) {
        const double outer = std::sqrt(4.0 * k + 2.0);  // all roots lie inside
        std::vector<double> brackets;
        brackets.push_back(-outer);
        brackets.insert(brackets.end(), roots.begin(), roots.end());
        brackets.push_back(outer);
        std::vector<double> next(static_cast<std::size_t>(k));
        for (int r = 0; r < k; ++r) {
            double lo = brackets[static_cast<std::size_t>(r)];
            double hi = brackets[static_cast<std::size_t>(r) + 1];
            double flo = hermite(k, lo);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double fmid = hermite(k, mid);
                if ((flo <= 0.0) == (fmid <= 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            next[static_cast<std::size_t>(r)] = 0.5 * (lo + hi);
        }
        roots = std::move(next);
    }
    return roots;
}

} // namespace

double MomentDistribution::moment(int j) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        acc += weights[k] * std::pow(nodes[k], j);
    return acc;
}

double normal_moment(int j) {
    if (j < 0) throw invalid_config("normal moment: negative order");
    if (j % 2 == 1) return 0.0;
    double acc = 1.0;
    for (int k = j - 1; k > 1; k -= 2) acc *= static_cast<double>(k);
    return acc;
}

MomentDistribution moment_distribution(int q) {
    if (q < 1 || q % 2 == 0)
        throw invalid_config("moment distribution: q must be an odd integer >= 1, got " +
                             std::to_string(q));
    const int m = (q + 1) / 2;
    std::vector<double> nodes = hermite_roots(m);
    std::sort(nodes.begin(), nodes.end());

    // Force exact symmetry of the node set before computing weights.
    for (int i = 0; i < m / 2; ++i) {
        const double mag = 0.5 * (nodes[static_cast<std::size_t>(m - 1 - i)] -
                                  nodes[static_cast<std::size_t>(i)]);
        nodes[static_cast<std::size_t>(i)] = -mag;
        nodes[static_cast<std::size_t>(m - 1 - i)] = mag;
    }
    if (m % 2 == 1) nodes[static_cast<std::size_t>(m / 2)] = 0.0;

    // Christoffel numbers: w = 1 / sum_{j<m} He_j(x)^2 / j!.
    std::vector<double> weights(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        double denom = 0.0, fact = 1.0;
        for (int j = 0; j < m; ++j) {
            if (j > 0) fact *= static_cast<double>(j);
            const double p = hermite(j, nodes[static_cast<std::size_t>(i)]);
            denom += p * p / fact;
        }
        weights[static_cast<std::size_t>(i)] = 1.0 / denom;
    }
    for (int i = 0; i < m / 2; ++i) {
        const double w = 0.5 * (weights[static_cast<std::size_t>(i)] +
                                weights[static_cast<std::size_t>(m - 1 - i)]);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(m - 1 - i)] = w;
    }

    MomentDistribution dist;
    dist.nodes = std::move(nodes);
    dist.weights = std::move(weights);
    dist.q = q;
    dist.B = dist.nodes.empty() ? 0.0 : std::max(std::fabs(dist.nodes.front()),
                                                 std::fabs(dist.nodes.back()));
    return dist;
}

int smallest_valid_q(double alpha) {
    if (!(alpha > 0.0)) throw invalid_config("smallest_valid_q: alpha must be positive");
    int q = 1;
    while (static_cast<double>(q + 1) * alpha <= 1.0) q += 2;
    return q;
}

double null_density(double theta, double t) {
    if (theta < 0.0) throw invalid_config("null density: theta must be >= 0");
    const double sigma = std::sqrt(1.0 + theta * theta);
    return phi(t / sigma) / sigma;
}

double mixture_density(const MomentDistribution& G, double theta, double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < G.nodes.size(); ++k)
        acc += G.weights[k] * phi(t - theta * G.nodes[k]);
    return acc;
}

TestingProblem make_testing_problem(std::size_t n, double alpha, int q, double M_f) {
    if (n < 1) throw invalid_config("testing problem: n must be >= 1");
    TestingProblem p;
    p.G = moment_distribution(q);
    p.alpha = alpha;
    p.M_f = M_f;
    p.n = n;
    p.theta = M_f / (2.0 * p.G.B) * std::pow(static_cast<double>(n), -alpha);
    if (!(p.theta > 0.0)) throw invalid_config("testing problem: theta must be positive");
    return p;
}

double single_sample_deficit(const MomentDistribution& G, double theta) {
    if (theta < 0.0) throw invalid_config("affinity: theta must be >= 0");
    // The half-width keeps both Gaussian tails under the tolerance: beyond
    // 8 standard deviations the survival function is ~6e-16.
    const double limit = 8.0 * std::sqrt(1.0 + theta * theta) + theta * G.B;
    const double value = integrate(
        [&](double t) {
            const double delta = std::sqrt(null_density(theta, t)) -
                                 std::sqrt(mixture_density(G, theta, t));
            return 0.5 * delta * delta;
        },
        -limit, limit, /*abs_tol=*/1e-20, /*max_intervals=*/4000, /*rel_tol=*/1e-8).value;
    return std::max(value, 0.0);
}

double single_sample_affinity(const MomentDistribution& G, double theta, double abs_tol) {
    (void)abs_tol;  // the deficit route is always at least this accurate
    return std::clamp(1.0 - single_sample_deficit(G, theta), 1e-300, 1.0);
}

double hellinger_affinity(const TestingProblem& problem) {
    const double deficit = single_sample_deficit(problem.G, problem.theta);
    if (deficit >= 1.0) return 0.0;
    const double log_rho = static_cast<double>(problem.n) * std::log1p(-deficit);
    return std::clamp(std::exp(log_rho), 0.0, 1.0);
}

double hc_integral(double d, double abs_tol) {
    if (!(d > 0.0)) throw invalid_config("hc integral: d must be positive");
    const double limit = 10.0 * std::sqrt(d) + 30.0;
    const double norm = 1.0 / std::sqrt(2.0 * 3.14159265358979323846 * d);
    const double damp = std::exp(-d / 8.0);
    return integrate(
        [&](double x) {
            return x / (std::exp(0.5 * x) + std::exp(-0.5 * x)) * norm *
                   std::exp(-x * x / (2.0 * d)) * damp;
        },
        -limit, limit, abs_tol).value;
}

AdversarialMean::AdversarialMean(std::size_t n, double theta, std::vector<double> bump_heights)
    : n_(n), theta_(theta), bump_heights_(std::move(bump_heights)) {}

double AdversarialMean::operator()(double x) const {
    if (x < 0.0 || x > 1.0) return 0.0;
    const double dn = static_cast<double>(n_);
    const auto i = static_cast<long long>(std::llround(x * dn));
    if (i < 1 || i > static_cast<long long>(n_)) return 0.0;
    const double dist = std::fabs(x - static_cast<double>(i) / dn);
    const double g = 1.0 - 2.0 * dn * dist;  // triangular bump, width 1/n
    if (g <= 0.0) return 0.0;
    return bump_heights_[static_cast<std::size_t>(i - 1)] * g;
}

AdversarialMean adversarial_mean(std::size_t n, double alpha, int q, double M_f,
                                 std::uint64_t seed) {
    if (n < 3) throw invalid_config("adversarial mean: n must be >= 3");
    if (!(static_cast<double>(q + 1) * alpha > 1.0))
        throw invalid_config("adversarial mean: requires (q+1)*alpha > 1, got q = " +
                             std::to_string(q) + ", alpha = " + std::to_string(alpha));
    const MomentDistribution G = moment_distribution(q);
    const double theta = M_f / (2.0 * G.B) * std::pow(static_cast<double>(n), -alpha);

    // Cumulative weights for inverse-CDF draws from the discrete G.
    std::vector<double> cum(G.weights.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < G.weights.size(); ++k) {
        acc += G.weights[k];
        cum[k] = acc;
    }
    cum.back() = 1.0;

    RandomStream stream(seed);
    std::vector<double> heights(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = stream.uniform01();
        const std::size_t k = static_cast<std::size_t>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        heights[i] = theta * G.nodes[std::min(k, G.nodes.size() - 1)];
    }
    return AdversarialMean(n, theta, std::move(heights));
}

double expected_rate_slope(double alpha) {
    if (alpha < 0.0) throw invalid_config("expected_rate_slope: alpha must be >= 0");
    if (alpha == 0.0) return -0.8;
    return std::max(-4.0 * alpha, -0.8);
}

namespace {

SlopeStudy run_slope_cells(double alpha, int q, std::span<const std::size_t> ns,
                           const LowerBoundConfig& config, bool adversarial) {
    std::vector<std::vector<double>> sq_err(ns.size());
    for (auto& v : sq_err) v.resize(config.replications);

    parallel_for(ns.size() * config.replications, [&](std::size_t cell) {
        const std::size_t size_idx = cell / config.replications;
        const std::size_t rep = cell % config.replications;
        const std::size_t n = ns[size_idx];
        const std::uint64_t cell_seed =
            derive_seed(config.master_seed, n * 1000003ull + rep, adversarial ? 0xADu : 0xC0u);

        Sample sample;
        sample.design = Design::fixed_equidistant;
        sample.x.resize(n);
        sample.y.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            sample.x[i] = static_cast<double>(i + 1) / static_cast<double>(n);

        RandomStream noise(derive_seed(cell_seed, 1, 0x2E));
        if (adversarial) {
            const AdversarialMean f1 =
                adversarial_mean(n, alpha, q, config.M_f, derive_seed(cell_seed, 2, 0x3F));
            const auto means = f1.design_values();
            for (std::size_t i = 0; i < n; ++i) sample.y[i] = means[i] + noise.normal();
        } else {
            for (std::size_t i = 0; i < n; ++i) sample.y[i] = noise.normal();
        }

        const double h = std::pow(static_cast<double>(n), config.h_exponent);
        const double grid[] = {0.5};
        const VarianceEstimate est = estimate_variance(sample, h, 2, grid, false);
        const double err = est.values[0] - 1.0;  // true variance is 1
        sq_err[size_idx][rep] = err * err;
    });

    SlopeStudy study;
    study.alpha = adversarial ? alpha : 0.0;
    study.q = adversarial ? q : 0;
    study.expected_slope = expected_rate_slope(study.alpha);
    study.points.reserve(ns.size());
    for (std::size_t k = 0; k < ns.size(); ++k)
        study.points.emplace_back(std::log(static_cast<double>(ns[k])),
                                  std::log(median(sq_err[k])));
    study.slope = fit_line(study.points).first;
    return study;
}

} // namespace

LowerBoundResult lower_bound_experiment(std::span<const double> alphas,
                                        std::span<const std::size_t> ns,
                                        const LowerBoundConfig& config,
                                        bool include_control) {
    if (alphas.empty()) throw invalid_config("lower bound experiment: no alphas given");
    if (ns.size() < 3)
        throw invalid_config("lower bound experiment: need at least 3 sample sizes");
    if (config.replications < 1)
        throw invalid_config("lower bound experiment: replications must be >= 1");

    LowerBoundResult result;
    for (double alpha : alphas) {
        const int q = config.q > 0 ? config.q : smallest_valid_q(alpha);
        result.entries.push_back(run_slope_cells(alpha, q, ns, config, true));
    }
    if (include_control) {
        result.control = run_slope_cells(0.0, 1, ns, config, false);
        result.has_control = true;
    }
    return result;
}

} // namespace heterovar
