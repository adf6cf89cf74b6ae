#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "lz/exact.hpp"
#include "lz/integrate.hpp"
#include "lz/riccati.hpp"

using namespace lz;
using namespace lz::exact;
constexpr double kPi = std::numbers::pi;

TEST_CASE("complex scaling") {
    const Params p(4.0, 3.0);
    CHECK(scale_z(p, 0.0) == cplx{0.0, 0.0});
    CHECK(std::abs(scale_z(p, 1.0) - cplx{2.0, 2.0}) <= 1e-15);
    const cplx zneg = scale_z(p, -1.0);
    CHECK(std::abs(zneg - cplx{-2.0, -2.0}) <= 1e-15);
    CHECK(std::arg(zneg) == doctest::Approx(-3.0 * kPi / 4.0).epsilon(1e-14));
}

TEST_CASE("coefficient matching") {
    const Params p(4.0, 3.0);
    SUBCASE("propagation initial data reduces to the ratio form") {
        const auto coeffs = coefficients_propagation_initial_data(p);
        const specfun::CylinderOrder ord(p.epsilon);
        const cplx z0 = scale_z(p, p.tau0);
        const cplx det = specfun::parabolic_cylinder_D(ord.nu, -z0) *
                             specfun::parabolic_cylinder_D(ord.nu + 1.0, z0) +
                         specfun::parabolic_cylinder_D(ord.nu, z0) *
                             specfun::parabolic_cylinder_D(ord.nu + 1.0, -z0);
        CHECK(std::abs(coeffs.a_plus -
                       specfun::parabolic_cylinder_D(ord.nu + 1.0, z0) / det) <= 1e-12);
        CHECK(std::abs(coeffs.a_minus -
                       specfun::parabolic_cylinder_D(ord.nu + 1.0, -z0) / det) <= 1e-12);
    }
    SUBCASE("random initial data round-trips through the matched solution") {
        const cplx z0 = scale_z(p, p.tau0);
        for (int k = 0; k < 10; ++k) {
            const cplx a0{testing::uniform(-1.0, 1.0), testing::uniform(-1.0, 1.0)};
            const cplx slope{testing::uniform(-1.0, 1.0), testing::uniform(-1.0, 1.0)};
            const auto coeffs = coefficients_general(a0, slope, p);
            const auto at_start = general_amplitudes(coeffs, -p.tau0);
            CHECK(std::abs(at_start.a - a0) <= 1e-10);
            // slope in z recovered through the first-order system:
            // b = -sqrt(2 eps) e^{-i pi/4} (a' - z a / 2)
            const cplx slope_rec = 0.5 * (-z0) * a0 -
                                   at_start.b * std::polar(1.0, kPi / 4.0) /
                                       std::sqrt(2.0 * p.epsilon);
            CHECK(std::abs(slope_rec - slope) <= 1e-9);
        }
    }
}

TEST_CASE("closed-form amplitudes against the propagated pair") {
    const Params p(4.0, 8.581);
    SUBCASE("initial conditions") {
        const auto at_start = exact_amplitudes(p, -p.tau0);
        CHECK(std::abs(at_start.a - cplx{1.0, 0.0}) <= 1e-10);
        CHECK(std::abs(at_start.b) <= 1e-10);
        CHECK(std::abs(at_start.eta) <= 1e-10);
    }
    SUBCASE("value at the crossing") {
        const auto ode = solve_schroedinger(p, [] {
            SolverConfig c;
            c.output_grid = {0.0};
            return c;
        }());
        CHECK(std::abs(amplitude_a_exact(p, 0.0) - ode.samples.back().a) <= 1e-6);
    }
    SUBCASE("normalization defect over a 100-point grid") {
        double worst = 0.0;
        bool any_degraded = false;
        for (int k = 0; k < 100; ++k) {
            const double tau = -p.tau0 + 2.0 * p.tau0 * k / 99.0;
            const auto ex = exact_amplitudes(p, tau);
            worst = std::max(worst,
                             std::abs(std::norm(ex.a) + std::norm(ex.b) - 1.0));
            any_degraded = any_degraded || ex.degraded || ex.near_node;
        }
        CHECK(worst <= 1e-6);
        CHECK_FALSE(any_degraded);
    }
    SUBCASE("asymptotic moduli at a wide window") {
        const Params wide(4.0, 54.270);
        const auto ex = exact_amplitudes(wide, wide.tau0);
        CHECK(std::abs(std::abs(ex.a) - asymptotic_a_modulus(4.0)) <= 5e-3);
        CHECK(std::abs(std::abs(ex.b) - asymptotic_b_modulus(4.0)) <= 5e-3);
        CHECK(std::abs(std::abs(ex.eta) - asymptotic_eta_modulus(4.0)) <= 1e-2);
        CHECK(asymptotic_a_modulus(4.0) == doctest::Approx(0.6752319066557772));
        CHECK(asymptotic_b_modulus(4.0) == doctest::Approx(0.7376054990535278));
        CHECK(asymptotic_eta_modulus(4.0) == doctest::Approx(1.0923735857013458));
    }
    SUBCASE("eta route matches the Riccati propagation") {
        SolverConfig cfg;
        cfg.output_grid = {2.0};
        const auto sol = solve_riccati(p, cfg);
        CHECK(std::abs(eta_exact(p, 2.0) - sol.samples.back().eta) <= 1e-6);
    }
}

TEST_CASE("first-order system residual in the scaled variable") {
    // i da/dz = i (z/2) a + e^{-i pi/4}/sqrt(2 eps) * b, the z-form of the
    // coupled system (rederived; the sign of the coupling term is fixed by
    // the propagated b)
    const Params p(4.0, 8.581);
    for (const double tau : {-5.0, -1.0, 0.7, 4.0}) {
        const double dz_dtau = std::sqrt(2.0 * p.epsilon);  // |dz|, direction e^{i pi/4}
        const double h_tau = 1e-4 / dz_dtau;
        auto a_of = [&](double t) { return amplitude_a_exact(p, t); };
        const cplx num = a_of(tau - 2.0 * h_tau) - 8.0 * a_of(tau - h_tau) +
                         8.0 * a_of(tau + h_tau) - a_of(tau + 2.0 * h_tau);
        const cplx dz_unit = std::polar(dz_dtau, kPi / 4.0);
        const cplx da_dz = num / (12.0 * h_tau * dz_unit);
        const auto here = exact_amplitudes(p, tau);
        const cplx z = scale_z(p, tau);
        const cplx residual = cplx{0.0, 1.0} * da_dz - cplx{0.0, 1.0} * 0.5 * z * here.a -
                              std::polar(1.0, -kPi / 4.0) / std::sqrt(2.0 * p.epsilon) *
                                  here.b;
        const double scale = std::abs(da_dz) + std::abs(0.5 * z * here.a) + std::abs(here.b);
        CHECK(std::abs(residual) / scale <= 1e-7);
    }
}

TEST_CASE("general solutions conserve the quadratic form") {
    const Params p(4.0, 3.0);
    for (int k = 0; k < 5; ++k) {
        const cplx a0{testing::uniform(-1.0, 1.0), testing::uniform(-1.0, 1.0)};
        const cplx slope{testing::uniform(-1.0, 1.0), testing::uniform(-1.0, 1.0)};
        const auto coeffs = coefficients_general(a0, slope, p);
        const auto start = general_amplitudes(coeffs, -p.tau0);
        const double invariant = std::norm(start.a) + std::norm(start.b);
        for (int j = 0; j < 20; ++j) {
            const double tau = testing::uniform(-p.tau0, p.tau0);
            const auto here = general_amplitudes(coeffs, tau);
            CHECK(std::abs(std::norm(here.a) + std::norm(here.b) - invariant) <=
                  1e-6 * invariant);
        }
    }
}

TEST_CASE("asymptotic transition phase") {
    const Params p(4.0, 8.581);
    SUBCASE("the two stated constants agree mod 2 pi") {
        CHECK(std::abs(wrap_to_pi(0.75 * kPi - (-1.25 * kPi))) <= 1e-12);
    }
    SUBCASE("gamma-argument component") {
        CHECK(specfun::log_gamma(cplx{1.0, 0.125}).imag() ==
              doctest::Approx(-0.0713756300184971).epsilon(1e-12));
    }
    SUBCASE("matches the measured phase of b, tail included") {
        // the finite-width wobble is 0.0211 rad here (frozen cross-validated)
        const double d_exact =
            circular_distance(std::arg(amplitude_b_exact(p, p.tau0)), asymptotic_b_phase(p));
        CHECK(d_exact == doctest::Approx(0.0210906).epsilon(2e-4));
        CHECK(d_exact <= 3e-2);
        const Params wide(4.0, 54.270);
        const double d_wide = circular_distance(
            std::arg(amplitude_b_exact(wide, wide.tau0)), asymptotic_b_phase(wide));
        CHECK(d_wide <= 5e-3);
    }
    SUBCASE("eta phase sits a quarter turn above the b phase") {
        CHECK(circular_distance(asymptotic_eta_phase(p),
                                asymptotic_b_phase(p) + kPi / 2.0) <= 1e-12);
        const Params wide(4.0, 54.270);
        const double d = circular_distance(std::arg(eta_exact(wide, wide.tau0)),
                                           asymptotic_eta_phase(wide));
        CHECK(d <= 1e-2);
    }
}

TEST_CASE("closed form tracks the propagation across the validated range") {
    for (const double eps : {0.5, 20.0, 100.0}) {
        const Params p(eps, 4.0);
        SolverConfig cfg;
        cfg.output_points = 50;
        const auto ode = solve_schroedinger(p, cfg);
        double worst = 0.0;
        for (const auto& s : ode.samples) {
            const auto ex = exact_amplitudes(p, s.tau);
            worst = std::max({worst, std::abs(ex.a - s.a), std::abs(ex.b - s.b)});
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("degenerate coefficient guard stays quiet on the family") {
    for (const double eps : {0.5, 4.0, 50.0}) {
        const Params p(eps, 5.0);
        CHECK_NOTHROW(coefficients_propagation_initial_data(p));
    }
}
