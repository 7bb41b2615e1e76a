#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "casimir/constants.hpp"
#include "casimir/quadrature.hpp"

using namespace casimir;
using Catch::Approx;

TEST_CASE("adaptive GK on smooth and peaky integrands") {
    auto r1 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi, 1e-12);
    CHECK(r1.value == Approx(2.0).epsilon(1e-13));

    // narrow Lorentzian, analytic arctan value
    const double w = 1e-5;
    auto r2 = integrate_adaptive([&](double x) { return w / (x * x + w * w); }, -1.0, 1.0, 1e-11);
    CHECK(r2.value == Approx(2.0 * std::atan(1.0 / w)).epsilon(1e-10));

    // complex-valued integrand
    auto r3 = integrate_adaptive(
        [](double t) { return std::exp(std::complex<double>(0.0, t)); }, 0.0, pi / 2.0, 1e-12);
    CHECK(r3.value.real() == Approx(1.0).epsilon(1e-12));
    CHECK(r3.value.imag() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adaptive GK reports failure on a genuine divergence") {
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / std::abs(x - 0.3); }, 0.0, 1.0,
                                       1e-10, 0.0, 200),
                    quadrature_failure);
}

TEST_CASE("brent root finder") {
    auto f = [](double x) { return std::cos(x) - x; };
    const double r = brent_root(f, 0.0, 1.0, 1e-15);
    CHECK(f(r) == Approx(0.0).margin(1e-14));
    CHECK_THROWS_AS(brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                    invalid_configuration);
}

TEST_CASE("richardson derivative") {
    auto f = [](std::complex<double> z) { return std::exp(z) * std::sin(z.real() * 0.0 + 1.0); };
    (void)f;
    auto g = [](double x) { return std::exp(2.0 * x); };
    CHECK(derivative(g, 0.3, 1e-3) == Approx(2.0 * std::exp(0.6)).epsilon(1e-10));

    auto h = [](std::complex<double> z) { return z * z * z; };
    const std::complex<double> d = derivative(h, std::complex<double>(1.0, 2.0), 1e-4);
    const std::complex<double> want = 3.0 * std::complex<double>(1.0, 2.0) * std::complex<double>(1.0, 2.0);
    CHECK(std::abs(d - want) < 1e-9 * std::abs(want));
}
