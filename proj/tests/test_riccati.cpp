#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "lz/integrate.hpp"
#include "lz/markov.hpp"
#include "lz/riccati.hpp"
#include "lz/specfun.hpp"

using namespace lz;
constexpr double kPi = std::numbers::pi;

namespace {

SolverConfig grid_config(std::size_t n) {
    SolverConfig cfg;
    cfg.output_points = n;
    return cfg;
}

}  // namespace

TEST_CASE("amplitude reconstruction") {
    const Params p(4.0, 8.581);
    const auto cfg = grid_config(150);
    const auto sol = solve_riccati(p, cfg);
    const auto rec = riccati::reconstruct_amplitudes(sol);

    SUBCASE("starts at (1, 0)") {
        CHECK(std::abs(rec.samples.front().a - cplx{1.0, 0.0}) <= 1e-14);
        CHECK(std::abs(rec.samples.front().b) <= 1e-14);
    }
    SUBCASE("matches the propagated amplitudes") {
        const auto ode = solve_schroedinger(p, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < ode.samples.size(); ++i)
            worst = std::max({worst, std::abs(rec.samples[i].a - ode.samples[i].a),
                              std::abs(rec.samples[i].b - ode.samples[i].b)});
        CHECK(worst <= 1e-6);
    }
    SUBCASE("normalization is a genuine consistency output") {
        CHECK(max_normalization_defect(rec) <= 1e-6);
    }
    SUBCASE("polar route for b agrees with the product route") {
        double worst = 0.0;
        for (std::size_t i = 0; i < sol.samples.size(); ++i) {
            const auto& d = sol.decomposition[i];
            const cplx polar_b = std::sqrt(std::max(0.0, 1.0 - d.A * d.A)) *
                                 std::polar(1.0, d.varphi + d.psi);
            worst = std::max(worst, std::abs(polar_b - rec.samples[i].b));
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("modulus from amplitude") {
    CHECK(riccati::eta_modulus_from_A(1.0) == 0.0);
    CHECK(riccati::eta_modulus_from_A(std::exp(-kPi / 8.0)) ==
          doctest::Approx(1.0923735857013458).epsilon(1e-13));
    CHECK(riccati::eta_modulus_from_A(1.0 / std::sqrt(2.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(riccati::eta_modulus_from_A(0.0), std::domain_error);
    CHECK_THROWS_AS(riccati::eta_modulus_from_A(-0.2), std::domain_error);
    CHECK_THROWS_AS(riccati::eta_modulus_from_A(1.1), std::domain_error);
}

TEST_CASE("implicit identity") {
    const Params p(4.0, 8.581);
    const auto sol = solve_riccati(p, grid_config(200));
    const auto report = riccati::implicit_identity_check(sol);
    CHECK(report.max_modulus_defect <= 1e-6);
    CHECK(report.max_phase_defect <= 1e-6);
    SUBCASE("both defects vanish at the start") {
        const auto& first = sol.samples.front();
        CHECK(std::abs(first.implicit) == 0.0);
        CHECK(std::exp(-first.H.real()) == 1.0);
    }
}

TEST_CASE("iterated solution from the exponential kernel") {
    const Params p(4.0, 10.0);
    SUBCASE("vanishes at the start") {
        const auto v = riccati::eta_iterated_exponential(p, {-10.0});
        CHECK(std::abs(v.front()) <= 1e-12);
    }
    SUBCASE("improves on the linearized solution at positive times") {
        std::vector<double> grid;
        for (int k = 0; k <= 25; ++k) grid.push_back(10.0 * k / 25.0);
        SolverConfig cfg;
        cfg.output_grid = grid;
        const auto sol = solve_riccati(p, cfg);
        const auto iter = riccati::eta_iterated_exponential(p, grid);
        double worst_iter = 0.0, worst_lin = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst_iter = std::max(worst_iter, std::abs(iter[i] - sol.samples[i].eta));
            worst_lin = std::max(worst_lin,
                                 std::abs(markov::eta_markov(p, grid[i]) - sol.samples[i].eta));
        }
        CHECK(worst_iter <= worst_lin);
    }
    SUBCASE("satisfies its defining equation") {
        const double h = 3e-4;
        for (int k = 0; k < 50; ++k) {
            const double tau = testing::uniform(-9.5, 9.5);
            const auto v = riccati::eta_iterated_exponential(
                p, {tau - 2.0 * h, tau - h, tau, tau + h, tau + 2.0 * h});
            const cplx rate = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
            const cplx residual = rate + 2.0 * cplx{0.0, 1.0} * p.epsilon * tau * v[2] - 1.0 -
                                  v[2] * markov::eta_markov(p, tau);
            CHECK(std::abs(residual) <= 1e-5);
        }
    }
}

TEST_CASE("additive iterate") {
    const Params p(4.0, 10.0);
    SUBCASE("reduces to the linearized start value") {
        CHECK(std::abs(riccati::eta_iterated_additive(p, -10.0)) <= 1e-12);
    }
    SUBCASE("closer to the numeric solution than the linearized one") {
        SolverConfig cfg;
        cfg.output_grid = {5.0};
        const auto sol = solve_riccati(p, cfg);
        const cplx eta = sol.samples.back().eta;
        CHECK(std::abs(riccati::eta_iterated_additive(p, 5.0) - eta) <
              std::abs(markov::eta_markov(p, 5.0) - eta));
    }
    SUBCASE("dropping the mirror term costs at most its own size") {
        for (const double tau : {3.0, 5.0, 8.0}) {
            const auto simple = riccati::eta_iterated_additive_simplified(p, tau);
            CHECK(simple.in_validity_region);
            // dropped mirror term: (1/2eps)|1/tau - e^{i theta}/tau0|
            CHECK(std::abs(simple.value - riccati::eta_iterated_additive(p, tau)) <=
                  (1.0 / tau + 1.0 / p.tau0) / (2.0 * p.epsilon));
        }
        CHECK_FALSE(riccati::eta_iterated_additive_simplified(p, 0.1).in_validity_region);
    }
}

TEST_CASE("large-negative-time expansion") {
    const Params p(4.0, 40.0);
    SUBCASE("leading term arithmetic at tau = -10") {
        const auto e = riccati::eta_large_negative(p, -10.0);
        CHECK(e.in_validity_region);
        CHECK(e.imag_part == doctest::Approx(0.0125 - 1.953125e-6).epsilon(1e-12));
        CHECK(e.real_part == doctest::Approx(1.5625e-5).epsilon(1e-12));
    }
    SUBCASE("real part carries no nonlinearity at this order") {
        const auto e = riccati::eta_large_negative(p, -7.0);
        CHECK(e.real_part ==
              -1.0 / (4.0 * p.epsilon * p.epsilon * (-7.0) * (-7.0) * (-7.0)));
    }
    SUBCASE("matches a far-start numeric solution") {
        SolverConfig cfg;
        cfg.output_grid = {-5.0};
        const cplx seed = 1.0 / (cplx{0.0, 2.0 * p.epsilon} * -40.0);
        const auto sol = solve_riccati_seeded(p, cfg, seed, -40.0);
        const auto e = riccati::eta_large_negative(p, -5.0);
        CHECK(std::abs(e.value - sol.samples.back().eta) <= 1e-3);
    }
    SUBCASE("region flag") {
        CHECK_FALSE(riccati::eta_large_negative(p, -0.5).in_validity_region);
    }
}

TEST_CASE("series data at the crossing from the equation itself") {
    const Params p(4.0, 8.581);
    SUBCASE("zero start value gives slope one, no curvature") {
        const auto t = riccati::eta_taylor0_exact(cplx{0.0, 0.0}, p);
        CHECK(t.first == cplx{1.0, 0.0});
        CHECK(t.second == cplx{0.0, 0.0});
    }
    SUBCASE("slope against dense output differentiation") {
        SolverConfig cfg;
        const double h = 1e-4;
        cfg.output_grid = {-h, 0.0, h};
        const auto sol = solve_riccati(p, cfg);
        const cplx eta0 = sol.samples[1].eta;
        const cplx rate = (sol.samples[2].eta - sol.samples[0].eta) / (2.0 * h);
        CHECK(std::abs(rate - (1.0 + eta0 * eta0)) <= 1e-5);
    }
    SUBCASE("quadratic model holds near the crossing") {
        SolverConfig cfg;
        for (int k = 0; k <= 80; ++k) cfg.output_grid.push_back(-0.1 + 0.2 * k / 80.0);
        const auto sol = solve_riccati(p, cfg);
        const cplx eta0 = sol.samples[40].eta;
        const auto t = riccati::eta_taylor0_exact(eta0, p);
        double worst = 0.0;
        for (const auto& s : sol.samples) {
            const cplx model = eta0 + t.first * s.tau + 0.5 * t.second * s.tau * s.tau;
            worst = std::max(worst, std::abs(model - s.eta));
        }
        CHECK(worst <= 5e-3);
    }
}

TEST_CASE("defect identity against the linearized solution") {
    for (const double tau0 : {5.0, 10.0}) {
        const Params p(4.0, tau0);
        const auto sol = solve_riccati(p, grid_config(101));
        const auto defects = riccati::markov_defect(sol);
        double worst = 0.0;
        for (double d : defects) worst = std::max(worst, d);
        CHECK(worst <= 1e-5);
    }
}

TEST_CASE("relation chain between the propagated pair and eta") {
    const Params p(4.0, 8.581);
    const auto cfg = grid_config(120);
    const auto ode = solve_schroedinger(p, cfg);
    const auto sol = solve_riccati(p, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < ode.samples.size(); ++i) {
        const cplx from_pair = cplx{0.0, 1.0} * ode.samples[i].b / ode.samples[i].a;
        worst = std::max(worst, std::abs(from_pair - sol.samples[i].eta));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("relative-phase behaviour") {
    const Params p(4.0, 20.0);
    SolverConfig cfg;
    for (int k = 0; k <= 400; ++k) cfg.output_grid.push_back(-20.0 + 40.0 * k / 400.0);
    cfg.output_grid.push_back(1.0);
    std::sort(cfg.output_grid.begin(), cfg.output_grid.end());
    cfg.output_grid.erase(std::unique(cfg.output_grid.begin(), cfg.output_grid.end()),
                          cfg.output_grid.end());
    const auto sol = solve_riccati(p, cfg);

    SUBCASE("pre-crossing psi stays inside the start-time envelope") {
        // the early-time loop eta = (i/2eps)(1/|tau| - e^{i theta}/tau0) swings
        // the phase by at most asin(|tau|/tau0) around pi/2
        for (std::size_t i = 0; i < sol.samples.size(); ++i) {
            const double tau = sol.samples[i].tau;
            if (tau > -1.0 || tau <= -p.tau0 + 0.25) continue;
            // loop radius over center |tau|/tau0, widened by the next-order
            // corrections to both; the real-part offset of the loop center
            // tilts the phase by ~1/(2 eps tau^2)
            const double ratio = std::abs(tau) / p.tau0 *
                                 (1.0 + 1.0 / (p.epsilon * std::abs(tau)));
            const double envelope = std::asin(std::min(1.0, ratio)) +
                                    0.75 / (p.epsilon * tau * tau) + 1e-2;
            CHECK(std::abs(sol.decomposition[i].psi) <= envelope);
        }
    }
    SUBCASE("accumulated relative phase grows without bound after the crossing") {
        double psi0 = 0.0, psi1 = 0.0, psi_end = 0.0;
        for (std::size_t i = 0; i < sol.samples.size(); ++i) {
            if (sol.samples[i].tau == 0.0) psi0 = sol.decomposition[i].psi;
            if (sol.samples[i].tau == 1.0) psi1 = sol.decomposition[i].psi;
        }
        psi_end = sol.decomposition.back().psi;
        CHECK(std::abs(psi_end) > std::abs(psi1));
        CHECK(std::abs(psi1) > std::abs(psi0));
        CHECK(std::abs(psi_end) > 100.0);
    }
}
