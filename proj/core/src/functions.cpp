#include "heterovar/functions.hpp"

#include <cmath>

#include "heterovar/errors.hpp"
#include "heterovar/quadrature.hpp"

namespace heterovar {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAmplitude = 0.75;

double sine_frequency(MeanId id) {
    switch (id) {
        case MeanId::f2: return 10.0;
        case MeanId::f3: return 20.0;
        case MeanId::f4: return 40.0;
        default: return 0.0;
    }
}

double builtin_mean(MeanId id, double x) {
    if (id == MeanId::f1) return 0.0;
    return kAmplitude * std::sin(sine_frequency(id) * kPi * x);
}

double builtin_mean_deriv(MeanId id, double x) {
    if (id == MeanId::f1) return 0.0;
    const double w = sine_frequency(id) * kPi;
    return kAmplitude * w * std::cos(w * x);
}

} // namespace

MeanId mean_id_from_name(const std::string& name) {
    if (name == "f1") return MeanId::f1;
    if (name == "f2") return MeanId::f2;
    if (name == "f3") return MeanId::f3;
    if (name == "f4") return MeanId::f4;
    if (name == "custom") return MeanId::custom;
    throw invalid_config("unknown mean function '" + name + "' (expected f1..f4)");
}

const char* mean_name(MeanId id) {
    switch (id) {
        case MeanId::f1: return "f1";
        case MeanId::f2: return "f2";
        case MeanId::f3: return "f3";
        case MeanId::f4: return "f4";
        default: return "custom";
    }
}

double FunctionSpec::mean(double x) const {
    if (mean_id == MeanId::custom) {
        if (!custom_mean) throw invalid_config("function spec: custom mean not provided");
        return custom_mean(x);
    }
    return builtin_mean(mean_id, x);
}

double FunctionSpec::variance(double x) const {
    if (variance_id == VarianceId::custom) {
        if (!custom_variance) throw invalid_config("function spec: custom variance not provided");
        return custom_variance(x);
    }
    const double c = x - 0.5;
    return c * c + 0.5;
}

double roughness(MeanId id) {
    if (id == MeanId::custom)
        throw invalid_config("roughness: custom mean requires a FunctionSpec with a derivative");
    if (id == MeanId::f1) return 0.0;
    // int (A w cos(w x))^2 dx over [0,1] = A^2 w^2 / 2 for whole periods.
    const double w = sine_frequency(id) * kPi;
    return kAmplitude * kAmplitude * w * w / 2.0;
}

double roughness(const FunctionSpec& spec) {
    if (spec.mean_id != MeanId::custom) return roughness(spec.mean_id);
    if (!spec.custom_mean_deriv)
        throw invalid_config("roughness: custom mean has no derivative; unsupported");
    const auto& deriv = spec.custom_mean_deriv;
    return integrate([&](double x) { const double d = deriv(x); return d * d; },
                     0.0, 1.0, 1e-10).value;
}

double roughness_quadrature(MeanId id) {
    if (id == MeanId::custom) throw invalid_config("roughness_quadrature: built-in means only");
    return integrate([&](double x) { const double d = builtin_mean_deriv(id, x); return d * d; },
                     0.0, 1.0, 1e-10).value;
}

} // namespace heterovar
