#include "heterovar/kernel.hpp"
#include "heterovar/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace heterovar {

namespace {

constexpr int kMaxOrder = 10;  // moment systems are Hilbert-like; beyond this
                               // the conditioning is no longer trustworthy

double monomial_integral(double lo, double hi, int k) {
    return (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / static_cast<double>(k + 1);
}

//! Solve the dense system A x = rhs in place, partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0)
            throw invalid_config("kernel moment system is singular");
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = rhs[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

Kernel finish_kernel(double lo, double hi, std::vector<double> coeffs, int order) {
    Kernel k;
    k.support_lo = lo;
    k.support_hi = hi;
    k.poly = Polynomial(std::move(coeffs));
    k.order = order;
    k.l2_norm_sq = (k.poly * k.poly).integral(lo, hi);
    return k;
}

void validate_eval_point(double h, double x) {
    if (!(h > 0.0) || h >= 0.5)
        throw invalid_config("bandwidth h must lie in (0, 1/2), got " + std::to_string(h));
    if (x < 0.0 || x > 1.0)
        throw invalid_config("evaluation point x must lie in [0, 1], got " + std::to_string(x));
}

} // namespace

double Kernel::moment(int j) const {
    const auto& c = poly.coeffs();
    double acc = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        acc += c[k] * monomial_integral(support_lo, support_hi, j + static_cast<int>(k));
    return acc;
}

Kernel make_interior_kernel(int order) {
    if (order < 0) throw invalid_config("kernel order must be nonnegative");
    if (order > kMaxOrder) throw invalid_config("kernel order too large (max 10)");

    // Only even powers can be active on the symmetric support: the odd
    // moment conditions hold identically, so solve the even block alone.
    const int m = order / 2 + 1;
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[i][j] = monomial_integral(-1.0, 1.0, 2 * (i + j));
    std::vector<double> rhs(m, 0.0);
    rhs[0] = 1.0;
    const std::vector<double> even = solve_dense(std::move(a), std::move(rhs));

    std::vector<double> coeffs(static_cast<std::size_t>(order) + 1, 0.0);
    for (int j = 0; j < m; ++j) coeffs[static_cast<std::size_t>(2 * j)] = even[j];
    return finish_kernel(-1.0, 1.0, std::move(coeffs), order);
}

Kernel make_boundary_kernel(int order, double t) {
    if (order < 0) throw invalid_config("kernel order must be nonnegative");
    if (order > kMaxOrder) throw invalid_config("kernel order too large (max 10)");
    if (t < 0.0 || t > 1.0)
        throw invalid_config("boundary parameter t must lie in [0, 1], got " + std::to_string(t));

    const int m = order + 1;
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[i][j] = monomial_integral(-1.0, t, i + j);
    std::vector<double> rhs(m, 0.0);
    rhs[0] = 1.0;
    return finish_kernel(-1.0, t, solve_dense(std::move(a), std::move(rhs)), order);
}

namespace detail {

std::vector<double> bin_edges(std::span<const double> centers) {
    if (centers.size() < 2) throw invalid_config("bin construction needs at least 2 centers");
    std::vector<double> edges(centers.size() + 1);
    edges.front() = 0.0;
    for (std::size_t i = 1; i < centers.size(); ++i)
        edges[i] = 0.5 * (centers[i - 1] + centers[i]);
    edges.back() = 1.0;
    return edges;
}

namespace {

//! Shared core: walks the bins that intersect the kernel window and either
//! fills the weights or accumulates a weighted sum, using the exact
//! antiderivative of the effective kernel.
template <typename Sink>
void for_each_weight(const Kernel& interior, double h, double x,
                     std::span<const double> edges, Sink&& sink) {
    const int order = interior.order;
    Kernel boundary;  // built on demand for the exact t = x/h
    const Kernel* eff = &interior;
    bool reflected = false;
    if (x <= h) {
        // The division may land an ulp above 1 right at the regime edge.
        boundary = make_boundary_kernel(order, std::min(x / h, 1.0));
        eff = &boundary;
    } else if (x >= 1.0 - h) {
        boundary = make_boundary_kernel(order, std::min((1.0 - x) / h, 1.0));
        eff = &boundary;
        reflected = true;
    }
    const Polynomial anti = eff->poly.antiderivative();
    const double lo_arg = eff->support_lo;
    const double hi_arg = eff->support_hi;
    const double anti_lo = anti(lo_arg);

    // Bins outside [x-h, x+h] carry no mass.
    const auto first = std::lower_bound(edges.begin(), edges.end(), x - h);
    const auto last = std::upper_bound(edges.begin(), edges.end(), x + h);
    std::size_t bin_lo = first == edges.begin() ? 0 : static_cast<std::size_t>(first - edges.begin()) - 1;
    std::size_t bin_hi = std::min(edges.size() - 1, static_cast<std::size_t>(last - edges.begin()) + 1);

    const auto clamp_arg = [&](double v) { return std::clamp(v, lo_arg, hi_arg); };
    for (std::size_t i = bin_lo; i < bin_hi; ++i) {
        double w;
        if (!reflected) {
            // u -> (x - u)/h is decreasing, so the lower bin edge maps to the
            // upper argument.
            const double upper = clamp_arg((x - edges[i]) / h);
            const double lower = clamp_arg((x - edges[i + 1]) / h);
            w = (anti(upper) - anti_lo) - (anti(lower) - anti_lo);
        } else {
            const double upper = clamp_arg((edges[i + 1] - x) / h);
            const double lower = clamp_arg((edges[i] - x) / h);
            w = (anti(upper) - anti_lo) - (anti(lower) - anti_lo);
        }
        sink(i, w);
    }
}

} // namespace

double weighted_bin_sum(const Kernel& interior, double h, double x,
                        std::span<const double> edges,
                        std::span<const double> values) {
    double acc = 0.0;
    if (values.empty()) {
        for_each_weight(interior, h, x, edges, [&](std::size_t, double w) { acc += w; });
    } else {
        assert(values.size() == edges.size() - 1);
        for_each_weight(interior, h, x, edges,
                        [&](std::size_t i, double w) { acc += w * values[i]; });
    }
    return acc;
}

void bin_weights_into(const Kernel& interior, double h, double x,
                      std::span<const double> edges, std::span<double> out) {
    assert(out.size() == edges.size() - 1);
    std::fill(out.begin(), out.end(), 0.0);
    for_each_weight(interior, h, x, edges, [&](std::size_t i, double w) { out[i] = w; });
}

} // namespace detail

WeightVector bin_weights(int order, double h, double x, std::span<const double> centers) {
    validate_eval_point(h, x);
    const Kernel interior = make_interior_kernel(order);
    const std::vector<double> edges = detail::bin_edges(centers);
    WeightVector wv;
    wv.x = x;
    wv.h = h;
    wv.weights.assign(centers.size(), 0.0);
    detail::bin_weights_into(interior, h, x, edges, wv.weights);
    return wv;
}

WeightVector bin_weights(int order, double h, double x, int n) {
    if (n < 3) throw invalid_config("bin weights need n >= 3, got " + std::to_string(n));
    std::vector<double> centers(static_cast<std::size_t>(n) - 1);
    for (std::size_t i = 0; i < centers.size(); ++i)
        centers[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    return bin_weights(order, h, x, centers);
}

double kernel_l2_at(int order, double h, double x) {
    validate_eval_point(h, x);
    if (x > h && x < 1.0 - h) return make_interior_kernel(order).l2_norm_sq;
    if (x <= h) return make_boundary_kernel(order, std::min(x / h, 1.0)).l2_norm_sq;
    return make_boundary_kernel(order, std::min((1.0 - x) / h, 1.0)).l2_norm_sq;
}

} // namespace heterovar
