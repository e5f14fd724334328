#include <doctest.h>

#include <cmath>

#include "heterovar/errors.hpp"
#include "heterovar/polynomial.hpp"
#include "heterovar/quadrature.hpp"

using namespace heterovar;

TEST_CASE("polynomial evaluation and exact integration") {
    const Polynomial p({1.0, -2.0, 3.0});  // 1 - 2x + 3x^2
    CHECK(p(0.0) == 1.0);
    CHECK(p(2.0) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(p.integral(0.0, 1.0) == doctest::Approx(1.0 - 1.0 + 1.0).epsilon(1e-15));

    const Polynomial q = p * p;
    CHECK(q.degree() == 4);
    CHECK(q(0.5) == doctest::Approx(p(0.5) * p(0.5)).epsilon(1e-15));

    const Polynomial anti = p.antiderivative();
    CHECK(anti(0.0) == 0.0);
    CHECK(anti(1.0) - anti(-1.0) == doctest::Approx(p.integral(-1.0, 1.0)).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature on smooth integrands") {
    const auto sq = [](double x) { return x * x; };
    CHECK(integrate(sq, 0.0, 1.0, 1e-12).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto sine = [](double x) { return std::sin(x); };
    CHECK(integrate(sine, 0.0, 3.14159265358979323846, 1e-12).value ==
          doctest::Approx(2.0).epsilon(1e-13));

    const auto gauss = [](double t) {
        return std::exp(-0.5 * t * t) * 0.39894228040143267794;
    };
    CHECK(integrate(gauss, -8.0, 8.0, 1e-12).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quadrature reports its error and honors the interval budget") {
    const auto rough = [](double x) { return std::sin(200.0 * x) * std::sin(200.0 * x); };
    const QuadratureResult r = integrate(rough, 0.0, 1.0, 1e-10, 4000);
    CHECK(std::fabs(r.value - 0.5 * (1.0 - std::sin(400.0) / 400.0)) < 1e-9);
    CHECK(r.error <= 1e-10);
    CHECK(r.intervals > 1);

    CHECK_THROWS_AS(integrate(rough, 0.0, 1.0, 1e-14, 3), tolerance_error);
    CHECK_THROWS_AS(integrate(rough, 0.0, 1.0, 0.0), invalid_config);
}

TEST_CASE("relative tolerance mode resolves tiny integrals") {
    // A bump of height ~1e-18: absolute tolerances near 1e-10 would accept
    // garbage; the relative mode forces actual resolution.
    const auto tiny = [](double x) { return 1e-18 * std::exp(-x * x); };
    const QuadratureResult r = integrate(tiny, -6.0, 6.0, 1e-30, 4000, 1e-8);
    CHECK(r.value == doctest::Approx(1e-18 * std::sqrt(3.14159265358979323846)).epsilon(1e-7));
}
