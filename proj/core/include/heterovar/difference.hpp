#pragma once

#include <cstddef>
#include <span>

#include "heterovar/sample.hpp"

namespace heterovar {

//! d_i = y_i - y_{i+1}, i = 1..n-1. Adding a constant to every y leaves the
//! series bit-identical.
DifferenceSeries difference_series(const Sample& sample);

//! Rate-driven default bandwidth n^{-1/(1+2*beta)}, capped at 0.45 so it
//! stays inside the valid range for small n.
double default_bandwidth(std::size_t n, double beta = 2.0);

//! Difference-based variance estimator: half the kernel-smoothed squared
//! first differences, evaluated at each grid point. With truncate set,
//! negative values are clipped to zero after smoothing.
VarianceEstimate estimate_variance(const Sample& sample, double h, int order,
                                   std::span<const double> grid, bool truncate = false);

} // namespace heterovar
