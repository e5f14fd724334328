#include "heterovar/difference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heterovar/errors.hpp"
#include "heterovar/kernel.hpp"

namespace heterovar {

DifferenceSeries difference_series(const Sample& sample) {
    sample.validate();
    DifferenceSeries s;
    s.d.resize(sample.size() - 1);
    for (std::size_t i = 0; i + 1 < sample.size(); ++i)
        s.d[i] = sample.y[i] - sample.y[i + 1];
    return s;
}

double default_bandwidth(std::size_t n, double beta) {
    if (n < 3) throw invalid_config("default bandwidth needs n >= 3");
    if (!(beta > 0.0)) throw invalid_config("default bandwidth needs beta > 0");
    return std::min(std::pow(static_cast<double>(n), -1.0 / (1.0 + 2.0 * beta)), 0.45);
}

VarianceEstimate estimate_variance(const Sample& sample, double h, int order,
                                   std::span<const double> grid, bool truncate) {
    sample.validate();
    if (!(h > 0.0) || h >= 0.5)
        throw invalid_config("estimate_variance: h must lie in (0, 1/2), got " +
                             std::to_string(h));
    if (grid.empty()) throw invalid_config("estimate_variance: empty evaluation grid");
    for (double g : grid)
        if (g < 0.0 || g > 1.0)
            throw invalid_config("estimate_variance: grid point outside [0, 1]");

    const DifferenceSeries diffs = difference_series(sample);
    std::vector<double> half_sq(diffs.d.size());
    for (std::size_t i = 0; i < diffs.d.size(); ++i)
        half_sq[i] = 0.5 * diffs.d[i] * diffs.d[i];

    // Bin centers are the first n-1 design points; under random design these
    // are the observed locations, which keeps the construction conditional
    // on the design.
    const std::span<const double> centers(sample.x.data(), sample.size() - 1);
    const std::vector<double> edges = detail::bin_edges(centers);
    const Kernel interior = make_interior_kernel(order);

    VarianceEstimate est;
    est.grid.assign(grid.begin(), grid.end());
    est.values.resize(grid.size());
    est.h = h;
    est.method = VarianceMethod::difference_based;
    est.truncated = truncate;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double v = detail::weighted_bin_sum(interior, h, grid[g], edges, half_sq);
        if (truncate && v < 0.0) v = 0.0;
        est.values[g] = v;
    }
    return est;
}

} // namespace heterovar
