#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace heterovar {

//! Symmetric discrete distribution on [-B, B] matching the standard normal
//! moments through order q. Realized as the Gaussian-quadrature measure of
//! the normal weight: (q+1)/2 nodes, Christoffel weights.
struct MomentDistribution {
    std::vector<double> nodes;    // ascending, symmetric about 0
    std::vector<double> weights;  // positive, sum to 1, symmetric
    int q = 0;                    // matched moment order (odd)
    double B = 0.0;               // support bound, max |node|

    double moment(int j) const;
};

//! Build the measure for odd q >= 1; throws invalid_config otherwise.
MomentDistribution moment_distribution(int q);

//! Smallest odd q with (q + 1) * alpha > 1.
int smallest_valid_q(double alpha);

//! (j-1)!! for even j, 0 for odd j: the standard normal moments.
double normal_moment(int j);

//! Density of N(0, 1 + theta^2) at t.
double null_density(double theta, double t);

//! Gaussian location mixture sum_k w_k phi(t - theta v_k).
double mixture_density(const MomentDistribution& G, double theta, double t);

//! Two-hypothesis testing problem at separation theta_n = (M_f / 2B) n^{-alpha}.
struct TestingProblem {
    double theta = 0.0;
    std::size_t n = 0;
    MomentDistribution G;
    double alpha = 0.0;
    double M_f = 1.0;
};

TestingProblem make_testing_problem(std::size_t n, double alpha, int q, double M_f = 1.0);

//! Affinity deficit 1 - int sqrt(d0 d1) dt, computed directly as the
//! squared Hellinger distance (1/2) int (sqrt(d0) - sqrt(d1))^2 dt. The
//! deficit shrinks like theta^{2(q+1)}, far below the resolution of
//! 1 - affinity in double precision, so it is the quantity to integrate.
//! The range [-(8 sqrt(1+theta^2) + theta B), +...] keeps the Gaussian
//! tails below the tolerance.
double single_sample_deficit(const MomentDistribution& G, double theta);

//! int sqrt(d0 * d1) dt = 1 - deficit, clamped into (0, 1].
double single_sample_affinity(const MomentDistribution& G, double theta,
                              double abs_tol = 1e-12);

//! Hellinger affinity of the n-fold products: the single-sample affinity
//! raised to the n-th power, evaluated as exp(n log1p(-deficit)) so that
//! values next to 1 stay exact.
double hellinger_affinity(const TestingProblem& problem);

//! The correction-term integral behind the miscalculation refutation:
//! int x / (e^{x/2} + e^{-x/2}) * (2 pi d)^{-1/2} e^{-x^2/(2d) - d/8} dx.
//! Odd integrand, so the value is 0 for every d > 0; the function evaluates
//! it numerically and returns the (near-zero) result.
double hc_integral(double d, double abs_tol = 1e-12);

//! Random mean made of disjoint triangular bumps g(x) = 1 - 2n|x| centered
//! at the design points, scaled by theta_n r_i with r_i ~ G i.i.d. Holds
//! f(x_i) = theta_n r_i and sup|f| <= theta_n B for every realization.
class AdversarialMean {
public:
    AdversarialMean(std::size_t n, double theta, std::vector<double> bump_heights);

    double operator()(double x) const;
    std::span<const double> design_values() const { return bump_heights_; }
    double theta() const { return theta_; }
    std::size_t n() const { return n_; }

private:
    std::size_t n_;
    double theta_;
    std::vector<double> bump_heights_;  // theta_n * r_i, i = 1..n
};

//! Draws r_i from G(q) with the given seed; requires (q+1) alpha > 1.
AdversarialMean adversarial_mean(std::size_t n, double alpha, int q, double M_f,
                                 std::uint64_t seed);

struct LowerBoundConfig {
    double M_f = 10.0;           // large enough that the mean-roughness term
                                 // dominates the estimator noise at desk scale
    std::size_t replications = 50;
    std::uint64_t master_seed = 0;
    double h_exponent = -0.2;    // bandwidth rule n^{h_exponent}
    int q = 0;                   // 0 = smallest valid q per alpha
};

struct SlopeStudy {
    double alpha = 0.0;
    int q = 0;
    double slope = 0.0;
    double expected_slope = 0.0;  // max(-4 alpha, -4/5): the dominant branch
    std::vector<std::pair<double, double>> points;  // (log n, log median sq. error)
};

//! Rate exponent of the dominant error branch for the default beta = 2
//! setting: max(-4 alpha, -4/5); the control (alpha = 0) gives -4/5.
double expected_rate_slope(double alpha);

struct LowerBoundResult {
    std::vector<SlopeStudy> entries;
    SlopeStudy control;  // f = 0 run, same protocol
    bool has_control = false;
};

//! Pointwise squared error of the difference-based estimator at x = 1/2
//! under the adversarial mean with unit variance, as a function of n;
//! reports the log-log slope per alpha plus the f = 0 control.
LowerBoundResult lower_bound_experiment(std::span<const double> alphas,
                                        std::span<const std::size_t> ns,
                                        const LowerBoundConfig& config,
                                        bool include_control = true);

} // namespace heterovar
