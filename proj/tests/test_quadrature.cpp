#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lz/quadrature.hpp"
#include "lz/specfun.hpp"

using namespace lz;

TEST_CASE("smooth closed forms") {
    using quadrature::integrate_real;
    CHECK(integrate_real([](double x) { return x * x * x; }, -1.0, 2.0) ==
          doctest::Approx(15.0 / 4.0).epsilon(1e-14));
    CHECK(integrate_real([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate_real([](double x) { return std::exp(-x); }, 0.0, 30.0) ==
          doctest::Approx(1.0 - std::exp(-30.0)).epsilon(1e-12));
}

TEST_CASE("orientation flips the sign") {
    const cplx forward = quadrature::integrate(
        [](double x) { return cplx{x, std::cos(x)}; }, 0.0, 2.0);
    const cplx backward = quadrature::integrate(
        [](double x) { return cplx{x, std::cos(x)}; }, 2.0, 0.0);
    CHECK(std::abs(forward + backward) < 1e-15);
}

TEST_CASE("oscillatory pre-split handles long chirped windows") {
    // oracle: the series-based chirp integral, an entirely different path
    const Params p(4.0, 20.0);
    const cplx oracle = specfun::chirp_integral(p, 20.0);
    const cplx direct = quadrature::integrate_oscillatory(
        [](double s) { return cplx{std::cos(4.0 * s * s), std::sin(4.0 * s * s)}; }, -20.0,
        20.0, 4.0);
    CHECK(std::abs(direct - oracle) <= 1e-10);
}
