#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "lz/specfun.hpp"

using namespace lz;
using namespace lz::specfun;
constexpr double kPi = std::numbers::pi;

namespace {

// independent series oracle for arg Gamma(1 + i y):
// Im log Gamma(1+z) = -gamma_E y + sum_{k>=3 odd} (-1)^k zeta(k) (i y)^k / k |_imag
double arg_gamma_series(double y) {
    static const double zeta[] = {0.0,
                                  0.0,
                                  1.6449340668482264,  // zeta(2)
                                  1.2020569031595943,  1.0823232337111382, 1.0369277551433699,
                                  1.0173430619844491,  1.0083492773819228, 1.0040773561979443,
                                  1.0020083928260822,  1.0009945751278181, 1.0004941886041195,
                                  1.0002460865533080,  1.0001227133475785, 1.0000612481350587,
                                  1.0000305882363070,  1.0000152822594087, 1.0000076371976379,
                                  1.0000038172932650,  1.0000019082127166, 1.0000009539620339,
                                  1.0000004769329868,  1.0000002384505027, 1.0000001192199260,
                                  1.0000000596081891};
    constexpr double gamma_e = 0.5772156649015329;
    // Im log Gamma(1 + i y) = -gamma_E y + sum over odd k >= 3 of
    // (-1)^{(k+1)/2} zeta(k) y^k / k
    double out = -gamma_e * y;
    double ypow = y;
    for (int k = 2; k <= 24; ++k) {
        ypow *= y;
        if (k % 2 == 1) {
            const double sign = ((k + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            out += sign * zeta[k] * ypow / k;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("chirp integral basics") {
    const Params p(4.0, 8.581);
    SUBCASE("vanishes over the empty interval") {
        CHECK(std::abs(chirp_integral(p, -p.tau0)) <= 1e-18);
    }
    SUBCASE("half-window value is F/2 by even symmetry") {
        const cplx half = chirp_integral(p, 0.0);
        const cplx full = fresnel_F(p);
        CHECK(std::abs(2.0 * half - full) <= 1e-15 * std::abs(full));
    }
    SUBCASE("full-axis limit sqrt(i pi / eps)") {
        const Params wide(4.0, 10000.0);
        const cplx limit = fresnel_F_limit(4.0);
        CHECK(limit.real() == doctest::Approx(0.6266570686577501).epsilon(1e-14));
        CHECK(limit.imag() == doctest::Approx(0.6266570686577501).epsilon(1e-14));
        CHECK(std::abs(fresnel_F(wide) - limit) < 1e-4);
    }
}

TEST_CASE("chirp integral against an adaptive quadrature oracle") {
    for (const double eps : {1.0, 4.0}) {
        for (const double tau0 : {1.0, 5.0, 20.0}) {
            const Params p(eps, tau0);
            for (const double tau : {-0.7 * tau0, 0.3, 2.9, 0.9 * tau0}) {
                if (std::abs(tau) > tau0) continue;
                const cplx oracle = testing::simpson_integrate(
                    [eps](double s) {
                        return cplx{std::cos(eps * s * s), std::sin(eps * s * s)};
                    },
                    -tau0, tau, 1e-13);
                CHECK(std::abs(chirp_integral(p, tau) - oracle) <= 1e-10);
            }
        }
    }
}

TEST_CASE("conjugation symmetry of the chirp integral") {
    const Params p(4.0, 5.0);
    for (const double tau : {-4.0, -1.3, 0.4, 3.7}) {
        const cplx conj_chirp = testing::simpson_integrate(
            [&](double s) { return cplx{std::cos(4.0 * s * s), -std::sin(4.0 * s * s)}; },
            -p.tau0, tau, 1e-13);
        CHECK(std::abs(std::conj(chirp_integral(p, tau)) - conj_chirp) <= 1e-12);
    }
}

TEST_CASE("fresnel_F tails and small-width limit") {
    SUBCASE("headline-width tail") {
        const Params p(4.0, 858.0855);
        CHECK(std::abs(fresnel_F(p) - fresnel_F_limit(4.0)) <= 3e-4);
    }
    SUBCASE("narrow window behaves like 2 tau0") {
        const Params p(4.0, 0.001);
        CHECK(std::abs(fresnel_F(p) - 0.002) <= 1e-8);
    }
    SUBCASE("tail bound 1/(eps tau0) wherever eps tau0^2 >= 10") {
        for (const double eps : {0.5, 1.0, 4.0, 10.0, 40.0}) {
            for (const double tau0 : {5.0, 20.0, 120.0}) {
                if (eps * tau0 * tau0 < 10.0) continue;
                const Params p(eps, tau0);
                CHECK(std::abs(fresnel_F(p) - fresnel_F_limit(eps)) <= 1.0 / (eps * tau0));
            }
        }
    }
}

TEST_CASE("log gamma") {
    SUBCASE("exact at 1") { CHECK(std::abs(log_gamma(cplx{1.0, 0.0})) <= 1e-15); }
    SUBCASE("functional equation at 1 + i/8") {
        const cplx i8{0.0, 0.125};
        const cplx lhs = gamma(1.0 + i8);
        const cplx rhs = i8 * gamma(i8);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
    SUBCASE("modulus identity |Gamma(1+iy)| = sqrt(pi y / sinh(pi y))") {
        const double y = 0.125;
        const double closed = std::sqrt(kPi * y / std::sinh(kPi * y));
        CHECK(std::abs(gamma(cplx{1.0, y})) == doctest::Approx(closed).epsilon(1e-13));
        CHECK(closed == doctest::Approx(0.987295761840994).epsilon(1e-12));
    }
    SUBCASE("arg Gamma(1 + i/8) against the zeta-series oracle") {
        const double oracle = arg_gamma_series(0.125);
        CHECK(log_gamma(cplx{1.0, 0.125}).imag() ==
              doctest::Approx(oracle).epsilon(1e-10));
        CHECK(oracle == doctest::Approx(-0.0713756300184971).epsilon(1e-10));
    }
    SUBCASE("reflection: Gamma(-1/2) = -2 sqrt(pi)") {
        CHECK(std::abs(gamma(cplx{-0.5, 0.0}) - cplx{-3.5449077018110322, 0.0}) <= 1e-12);
    }
    SUBCASE("poles throw") {
        CHECK_THROWS_AS(log_gamma(cplx{0.0, 0.0}), std::domain_error);
        CHECK_THROWS_AS(log_gamma(cplx{-3.0, 0.0}), std::domain_error);
    }
}

TEST_CASE("cylinder function closed forms") {
    SUBCASE("order 0 is the pure Gaussian") {
        for (const cplx z : {cplx{2.0, 0.0}, cplx{10.0, 0.0}, cplx{2.1213, 2.1213},
                             cplx{-3.0, 1.0}, cplx{0.0, 4.0}}) {
            const cplx ref = std::exp(-z * z / 4.0);
            CHECK(std::abs(parabolic_cylinder_D(cplx{0.0, 0.0}, z) - ref) <=
                  1e-12 * std::abs(ref));
        }
        CHECK(parabolic_cylinder_D(cplx{0.0, 0.0}, cplx{2.0, 0.0}).real() ==
              doctest::Approx(0.3678794411714423).epsilon(1e-13));
    }
    SUBCASE("order 1: z e^{-z^2/4}") {
        CHECK(std::abs(parabolic_cylinder_D(cplx{1.0, 0.0}, cplx{1.0, 0.0}) -
                       cplx{0.7788007830714049, 0.0}) <= 1e-13);
        const cplx z{1.2, -0.7};
        CHECK(std::abs(parabolic_cylinder_D(cplx{1.0, 0.0}, z) - z * std::exp(-z * z / 4.0)) <=
              1e-12);
    }
    SUBCASE("order 2: (z^2 - 1) e^{-z^2/4}") {
        const cplx z{0.8, 1.9};
        const cplx ref = (z * z - 1.0) * std::exp(-z * z / 4.0);
        CHECK(std::abs(parabolic_cylinder_D(cplx{2.0, 0.0}, z) - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("cylinder function for the transition-order family") {
    const cplx nu{-1.0, -0.125};  // eps = 4
    struct Case {
        cplx z, ref;
    };
    // frozen multiprecision references
    const Case cases[] = {
        {{2.0, 2.0}, {-0.351671677563746111, -0.120409436831718727}},
        {{-2.0, -2.0}, {-1.113641096140482121, 1.924163639516996285}},
        {{5.656854249492380195, 5.656854249492380195},
         {-0.033829046751232692, 0.133181790136252109}},
        {{10.0, 0.0}, {1.318114645604922757e-12, -3.928284605441532737e-13}},
        {{0.0, 3.0}, {-0.314213551729480019, -4.473772014958677119}},
        {{-7.0, 2.0}, {186369.389105058882650, -78443.584441016484133}},
        {{8.4852813742385702928, 8.4852813742385702928},
         {0.075245284190925068, 0.052585645593054170}},
    };
    for (const auto& c : cases) {
        const cplx v = parabolic_cylinder_D(nu, c.z);
        CHECK(std::abs(v - c.ref) <= 1e-12 * std::abs(c.ref));
    }
    const Case cases1[] = {
        {{2.0, 2.0}, {-0.582974001994472716, -0.927265923749147556}},
        {{-2.0, -2.0}, {-0.487358451510749846, -0.601339064020583077}},
        {{10.0, 0.0}, {1.331523477719025011e-11, -3.950813008295399406e-12}},
        {{16.970562748477141, 16.970562748477141},
         {1.095624118412594223, 0.127656088417194023}},
    };
    for (const auto& c : cases1) {
        const cplx v = parabolic_cylinder_D(nu + 1.0, c.z);
        CHECK(std::abs(v - c.ref) <= 1e-12 * std::abs(c.ref));
    }
}

TEST_CASE("cylinder ODE residual for random order/argument samples") {
    // D'' = (z^2/4 - nu - 1/2) D with derivatives by finite differences
    for (int k = 0; k < 20; ++k) {
        const double eps = testing::uniform(0.5, 10.0);
        const cplx nu{-1.0, -0.5 / eps};
        const double radius = testing::uniform(0.3, 20.0);
        const double angle = testing::uniform(-kPi, kPi);
        const cplx z = std::polar(radius, angle);
        auto f = [&](cplx w) { return parabolic_cylinder_D(nu, w); };
        const cplx second = testing::second_derivative5(f, z, 3e-3);
        const cplx coeff = z * z / 4.0 - nu - 0.5;
        const cplx value = f(z);
        const double scale = std::abs(coeff * value) + std::abs(second) + 1e-300;
        CHECK(std::abs(second - coeff * value) / scale <= 1e-7);
    }
}

TEST_CASE("derivative relation for the order ladder") {
    const cplx nu{-1.0, -0.125};
    const cplx z = 3.0 * std::polar(1.0, kPi / 4.0);
    auto f = [&](cplx w) { return parabolic_cylinder_D(nu, w); };
    const cplx deriv = testing::derivative5(f, z, 5e-3);
    const cplx residual = deriv - 0.5 * z * f(z) + parabolic_cylinder_D(nu + 1.0, z);
    const double scale =
        std::abs(deriv) + std::abs(0.5 * z * f(z)) + std::abs(parabolic_cylinder_D(nu + 1.0, z));
    CHECK(std::abs(residual) / scale <= 1e-9);
}

TEST_CASE("series and asymptotic regimes agree at the crossover") {
    const cplx nu{-1.0, -0.125};
    for (const double radius : {8.2, 8.9, 9.0, 9.6}) {
        for (const double angle : {kPi / 4.0, -3.0 * kPi / 4.0, 0.4, -1.2}) {
            const auto eval = parabolic_cylinder_D_eval(nu, std::polar(radius, angle));
            CHECK_FALSE(eval.degraded);
        }
    }
}

TEST_CASE("asymptotic sector forms") {
    SUBCASE("order 0 dominant form is exact") {
        const cplx v = cylinder_asymptotic_dominant(cplx{0.0, 0.0}, cplx{10.0, 0.0});
        CHECK(std::abs(v - std::exp(-25.0)) <= 1e-10 * std::exp(-25.0));
    }
    SUBCASE("decay along the positive-time ray") {
        const cplx nu{-1.0, -0.125};
        const cplx z20 = std::sqrt(8.0) * 20.0 * std::polar(1.0, kPi / 4.0);
        const cplx z10 = std::sqrt(8.0) * 10.0 * std::polar(1.0, kPi / 4.0);
        const double d20 = std::abs(cylinder_asymptotic_dominant(nu, z20));
        const double d10 = std::abs(cylinder_asymptotic_dominant(nu, z10));
        CHECK(d20 < d10);
        // |e^{-z^2/4} z^nu| = e^{pi/(8 eps)} / |z| on this ray
        CHECK(d20 == doctest::Approx(std::exp(kPi / 32.0) / std::abs(z20)).epsilon(1e-3));
    }
    SUBCASE("pair form against the independent series route near the crossover") {
        const cplx nu{-1.0, -0.125};
        for (const double radius : {8.5, 8.9}) {
            const cplx z = std::polar(radius, -3.0 * kPi / 4.0);
            const cplx series_route = parabolic_cylinder_D(nu, z);  // series below 9
            const cplx asym_route = cylinder_asymptotic_subdominant_pair(nu, z);
            CHECK(std::abs(series_route - asym_route) <= 1e-6 * std::abs(series_route));
        }
    }
    SUBCASE("pair form matches the full evaluator far out") {
        const cplx nu{-1.0, -0.125};
        const cplx z = std::polar(30.0, -3.0 * kPi / 4.0);
        const cplx full = parabolic_cylinder_D(nu, z);
        const cplx pair = cylinder_asymptotic_subdominant_pair(nu, z);
        CHECK(std::abs(full - pair) <= 1e-6 * std::abs(full));
    }
    SUBCASE("sector violations throw") {
        CHECK_THROWS_AS(cylinder_asymptotic_dominant(cplx{0.0, 0.0}, cplx{-10.0, 0.1}),
                        ContractViolation);
        CHECK_THROWS_AS(
            cylinder_asymptotic_subdominant_pair(cplx{0.0, 0.0}, cplx{10.0, 0.0}),
            ContractViolation);
    }
}

TEST_CASE("order bookkeeping for the transition family") {
    for (const double eps : {0.25, 4.0, 100.0}) {
        const CylinderOrder order(eps);
        CHECK(std::abs(order.nu + 1.0 - cplx{0.0, -0.5 / eps}) <= 1e-16);
        CHECK(std::abs(order.c + order.nu + 0.5) <= 1e-16);
    }
}
