#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracac/quadrature.hpp"

using namespace fracac;

TEST_CASE("smooth integrands") {
    CHECK(tanh_sinh([](double x) { return std::sin(x); }, 0.0,
                    std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(tanh_sinh([](double x) { return std::exp(x); }, -1.0, 2.0) ==
          doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-13));
    CHECK(tanh_sinh([](double) { return 3.0; }, 2.0, 5.0) ==
          doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("integrable endpoint singularities") {
    // Singularity at the lower endpoint: the abscissa offset is exact, so
    // full precision is reachable.
    CHECK(tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-13));
    // Upper-endpoint singularity: the integrand recomputes 1 - x with
    // cancellation, which caps the reachable accuracy.
    CHECK(tanh_sinh([](double x) { return std::pow(1.0 - x, -0.3); }, 0.0,
                    1.0) == doctest::Approx(1.0 / 0.7).epsilon(1e-10));
    // Both endpoints singular: Beta(1/2, 1/2) = pi.
    CHECK(tanh_sinh(
              [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0,
              1.0) == doctest::Approx(std::numbers::pi).epsilon(1e-7));
}

TEST_CASE("nested double integral") {
    CHECK(tanh_sinh_2d([](double x, double y) { return x * y; }, 0.0, 1.0, 0.0,
                       1.0) == doctest::Approx(0.25).epsilon(1e-11));
    CHECK(tanh_sinh_2d(
              [](double x, double y) { return std::pow(x + y, -0.5); }, 0.0,
              1.0, 0.0, 1.0) ==
          doctest::Approx((4.0 / 3.0) * (2.0 * std::sqrt(2.0) - 2.0))
              .epsilon(1e-9));
}
