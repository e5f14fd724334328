#pragma once

#include <functional>
#include <string>

namespace heterovar {

enum class MeanId { f1, f2, f3, f4, custom };
enum class VarianceId { v_quadratic, custom };

MeanId mean_id_from_name(const std::string& name);
const char* mean_name(MeanId id);

//! Mean/variance pair for the simulation model, together with the nominal
//! smoothness parameters and class radii used by the study runners.
//!
//! The built-in means are f1 = 0 and f_k(x) = (3/4) sin(10 * 2^{k-2} pi x)
//! for k = 2, 3, 4; the built-in variance is (x - 1/2)^2 + 1/2.
struct FunctionSpec {
    MeanId mean_id = MeanId::f1;
    VarianceId variance_id = VarianceId::v_quadratic;
    double alpha = 1.0;  // nominal Lipschitz order of the mean
    double beta = 2.0;   // nominal smoothness of the variance
    double M_f = 1.0;
    double M_V = 1.0;
    std::function<double(double)> custom_mean;
    std::function<double(double)> custom_mean_deriv;  // optional, for roughness
    std::function<double(double)> custom_variance;

    double mean(double x) const;
    double variance(double x) const;
};

//! Closed-form roughness R(f') = int_0^1 f'(x)^2 dx of a built-in mean.
double roughness(MeanId id);

//! Roughness of the configured mean: closed form for the built-ins,
//! adaptive quadrature of custom_mean_deriv^2 for custom means. Throws
//! invalid_config when a custom mean carries no derivative.
double roughness(const FunctionSpec& spec);

//! Quadrature evaluation of R(f') for a built-in mean; the closed form and
//! this path agree to 1e-8.
double roughness_quadrature(MeanId id);

} // namespace heterovar
