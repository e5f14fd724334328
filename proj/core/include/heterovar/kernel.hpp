#pragma once

#include <span>
#include <vector>

#include "heterovar/polynomial.hpp"

namespace heterovar {

//! Compactly supported polynomial kernel. Integrates to one and has
//! vanishing moments 1..order, all enforced exactly through the moment
//! linear system of the monomial basis on the support.
struct Kernel {
    double support_lo = -1.0;
    double support_hi = 1.0;
    Polynomial poly;          // density on [support_lo, support_hi], zero outside
    int order = 0;            // highest moment index forced to zero
    double l2_norm_sq = 0.0;  // exact integral of K^2 over the support

    double operator()(double x) const {
        if (x < support_lo || x > support_hi) return 0.0;
        return poly(x);
    }

    //! Exact \int x^j K(x) dx over the support.
    double moment(int j) const;
};

//! Minimal-degree interior kernel on [-1, 1]. Even orders give symmetric
//! kernels: the odd coefficients are identically zero by construction.
Kernel make_interior_kernel(int order);

//! Boundary kernel on [-1, t], t in [0, 1], with the same moment conditions.
Kernel make_boundary_kernel(int order, double t);

//! Bin-integrated smoothing weights at an evaluation point.
struct WeightVector {
    double x = 0.0;
    double h = 0.0;
    std::vector<double> weights;  // weight for bin i=1..n-1 at index i-1
};

//! Weights for the equidistant design x_i = i/n. Bin i is
//! [(x_{i-1}+x_i)/2, (x_i+x_{i+1})/2], with bin 1 starting at 0 and bin n-1
//! ending at 1. The effective kernel is the interior kernel for
//! x in (h, 1-h), the boundary kernel K_t at x = t*h, and its reflection at
//! x = 1-t*h. Each weight is the exact integral of (1/h) K((x-u)/h) over
//! its bin, evaluated through the polynomial antiderivative.
WeightVector bin_weights(int order, double h, double x, int n);

//! Same, for an arbitrary strictly increasing set of bin centers in [0, 1]
//! (used with observed design points under random design).
WeightVector bin_weights(int order, double h, double x, std::span<const double> centers);

//! L2 norm squared of the kernel actually in effect at evaluation point x.
double kernel_l2_at(int order, double h, double x);

namespace detail {

//! Bin edges spanned by centers: e_0 = 0, e_i = (c_{i-1}+c_i)/2, e_m = 1.
std::vector<double> bin_edges(std::span<const double> centers);

//! Accumulate sum_i w_i(x) * values[i] over the bins defined by edges
//! without materializing the weight vector. values has edges.size()-1
//! entries. Passing values = {} accumulates the plain weight sum.
double weighted_bin_sum(const Kernel& interior, double h, double x,
                        std::span<const double> edges,
                        std::span<const double> values);

//! Fill out[i] with the weight of bin i; out has edges.size()-1 entries.
void bin_weights_into(const Kernel& interior, double h, double x,
                      std::span<const double> edges, std::span<double> out);

} // namespace detail

} // namespace heterovar
