#include "heterovar/local_linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heterovar/errors.hpp"

namespace heterovar {

namespace {

struct Window {
    std::size_t lo, hi;  // half-open index range with |x - x0| <= h
};

Window find_window(std::span<const double> xs, double h, double x0) {
    const auto lo = std::lower_bound(xs.begin(), xs.end(), x0 - h);
    const auto hi = std::upper_bound(xs.begin(), xs.end(), x0 + h);
    return {static_cast<std::size_t>(lo - xs.begin()), static_cast<std::size_t>(hi - xs.begin())};
}

double intercept_from_sums(double s0, double s1, double s2, double t0, double t1,
                           double h, double x0) {
    const double denom = s0 * s2 - s1 * s1;
    const double scale = s0 * s0 * h * h;
    if (!(denom > 1e-14 * std::max(scale, 1e-300)))
        throw bandwidth_too_small("local linear fit degenerate at x0 = " + std::to_string(x0) +
                                  " with h = " + std::to_string(h));
    return (s2 * t0 - s1 * t1) / denom;
}

} // namespace

double local_linear_fit(std::span<const double> xs, std::span<const double> ys,
                        double h, double x0) {
    if (xs.size() != ys.size()) throw invalid_config("local linear fit: length mismatch");
    if (!(h > 0.0)) throw invalid_config("local linear fit: h must be positive");
    const Window w = find_window(xs, h, x0);
    if (w.hi - w.lo < 2)
        throw bandwidth_too_small("local linear fit: fewer than 2 points in window at x0 = " +
                                  std::to_string(x0) + " with h = " + std::to_string(h));
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, t0 = 0.0, t1 = 0.0;
    for (std::size_t i = w.lo; i < w.hi; ++i) {
        const double dx = xs[i] - x0;
        s0 += 1.0;
        s1 += dx;
        s2 += dx * dx;
        t0 += ys[i];
        t1 += ys[i] * dx;
    }
    return intercept_from_sums(s0, s1, s2, t0, t1, h, x0);
}

double local_linear_fit(const Sample& sample, double h, double x0) {
    sample.validate();
    return local_linear_fit(sample.x, sample.y, h, x0);
}

LocalLinearSmoother::LocalLinearSmoother(std::span<const double> xs,
                                         std::span<const double> ys)
    : x_(xs.begin(), xs.end()) {
    if (xs.size() != ys.size()) throw invalid_config("smoother: length mismatch");
    const std::size_t n = xs.size();
    sum_x_.assign(n + 1, 0.0L);
    sum_xx_.assign(n + 1, 0.0L);
    sum_y_.assign(n + 1, 0.0L);
    sum_xy_.assign(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        const long double x = xs[i];
        const long double y = ys[i];
        sum_x_[i + 1] = sum_x_[i] + x;
        sum_xx_[i + 1] = sum_xx_[i] + x * x;
        sum_y_[i + 1] = sum_y_[i] + y;
        sum_xy_[i + 1] = sum_xy_[i] + x * y;
    }
}

double LocalLinearSmoother::fit(double h, double x0) const {
    if (!(h > 0.0)) throw invalid_config("smoother: h must be positive");
    const Window w = find_window(x_, h, x0);
    const std::size_t cnt = w.hi - w.lo;
    if (cnt < 2)
        throw bandwidth_too_small("smoother: fewer than 2 points in window at x0 = " +
                                  std::to_string(x0) + " with h = " + std::to_string(h));
    const long double sx = sum_x_[w.hi] - sum_x_[w.lo];
    const long double sxx = sum_xx_[w.hi] - sum_xx_[w.lo];
    const long double sy = sum_y_[w.hi] - sum_y_[w.lo];
    const long double sxy = sum_xy_[w.hi] - sum_xy_[w.lo];
    const long double c = static_cast<long double>(cnt);
    const long double x0l = x0;
    // Centered sums; the long double prefixes keep the cancellation benign.
    const double s0 = static_cast<double>(c);
    const double s1 = static_cast<double>(sx - c * x0l);
    const double s2 = static_cast<double>(sxx - 2.0L * x0l * sx + c * x0l * x0l);
    const double t0 = static_cast<double>(sy);
    const double t1 = static_cast<double>(sxy - x0l * sy);
    return intercept_from_sums(s0, s1, s2, t0, t1, h, x0);
}

VarianceEstimate fan_yao_variance(const Sample& sample, double h_mean, double h_var,
                                  std::span<const double> grid, bool truncate) {
    sample.validate();
    if (grid.empty()) throw invalid_config("fan_yao_variance: empty evaluation grid");
    if (!(h_mean > 0.0) || !(h_var > 0.0))
        throw invalid_config("fan_yao_variance: bandwidths must be positive");

    const std::size_t n = sample.size();
    const LocalLinearSmoother mean_fit(sample.x, sample.y);
    std::vector<double> sq_resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = sample.y[i] - mean_fit.fit(h_mean, sample.x[i]);
        sq_resid[i] = r * r;
    }

    const LocalLinearSmoother var_fit(sample.x, sq_resid);
    VarianceEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(grid.size());
    est.h = h_var;
    est.method = VarianceMethod::residual_based;
    est.truncated = truncate;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double v = var_fit.fit(h_var, grid[g]);
        if (truncate && v < 0.0) v = 0.0;
        est.values[g] = v;
    }
    return est;
}

} // namespace heterovar
