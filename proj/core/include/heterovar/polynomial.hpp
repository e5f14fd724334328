#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace heterovar {

//! Dense univariate polynomial, coefficients stored in ascending degree.
//! Integration is exact (antiderivative evaluation), which is what the
//! kernel machinery relies on for bin weights and moment checks.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

    const std::vector<double>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    double operator()(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    //! Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        std::vector<double> c(coeffs_.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            c[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
        return Polynomial(std::move(c));
    }

    double integral(double a, double b) const {
        const Polynomial p = antiderivative();
        return p(b) - p(a);
    }

    Polynomial operator*(const Polynomial& rhs) const {
        if (coeffs_.empty() || rhs.coeffs_.empty()) return Polynomial();
        std::vector<double> c(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * rhs.coeffs_[j];
        return Polynomial(std::move(c));
    }

private:
    std::vector<double> coeffs_;
};

} // namespace heterovar
