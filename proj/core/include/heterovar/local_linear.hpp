#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heterovar/sample.hpp"

namespace heterovar {

//! Intercept of the least-squares line of ys on (xs - x0) over the window
//! |x - x0| <= h. The window weights come from the order-1 interior kernel,
//! which is constant, so the fit reduces to plain least squares on the
//! window. Throws bandwidth_too_small when fewer than two points receive
//! positive weight or the normal matrix degenerates.
double local_linear_fit(std::span<const double> xs, std::span<const double> ys,
                        double h, double x0);

double local_linear_fit(const Sample& sample, double h, double x0);

//! Prefix-sum evaluator for repeated local-linear fits over one response.
//! fit() agrees with local_linear_fit to rounding error and costs
//! O(log n) per evaluation.
class LocalLinearSmoother {
public:
    LocalLinearSmoother(std::span<const double> xs, std::span<const double> ys);

    double fit(double h, double x0) const;
    std::size_t size() const { return x_.size(); }

private:
    std::vector<double> x_;
    std::vector<long double> sum_x_, sum_xx_, sum_y_, sum_xy_;
};

//! Residual-based comparator. Step 1 fits the mean by local-linear
//! regression with h_mean at every design point; step 2 squares the
//! residuals; step 3 smooths the squared residuals with h_var onto the grid.
VarianceEstimate fan_yao_variance(const Sample& sample, double h_mean, double h_var,
                                  std::span<const double> grid, bool truncate = false);

} // namespace heterovar
