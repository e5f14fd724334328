#pragma once

#include <cstddef>
#include <functional>

namespace heterovar {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;      // accumulated error bound
    std::size_t intervals = 0;
};

//! Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
//!
//! Subdivides the worst interval until the summed error estimate drops
//! below max(abs_tol, rel_tol * |value|). Throws tolerance_error when
//! max_intervals is exhausted before the tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           double abs_tol = 1e-10,
                           std::size_t max_intervals = 4000,
                           double rel_tol = 0.0);

} // namespace heterovar
