#include "lz/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "lz/adiabatic.hpp"
#include "lz/detail/ddouble.hpp"
#include "lz/detail/dopri5.hpp"
#include "lz/exact.hpp"
#include "lz/integrate.hpp"
#include "lz/markov.hpp"
#include "lz/riccati.hpp"
#include "lz/specfun.hpp"

namespace lz::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

class Runner {
public:
    explicit Runner(const Config& config) : config_(config) {}

    std::vector<CriterionResult> run() {
        results_.clear();
        criterion("AC01", "final survival amplitude reaches its closed-form asymptote",
                  [this](CriterionResult& r) { ac01(r); });
        criterion("AC02", "final transition amplitude modulus reaches its asymptote",
                  [this](CriterionResult& r) { ac02(r); });
        criterion("AC03", "transition phase matches the asymptotic phase formula",
                  [this](CriterionResult& r) { ac03(r); });
        criterion("AC04", "linearized closed form agrees with its asymptote and its ODE",
                  [this](CriterionResult& r) { ac04(r); });
        criterion("AC05", "documented linearized-model failure for the b channel",
                  [this](CriterionResult& r) { ac05(r); });
        criterion("AC06", "eta bridges the two amplitudes (b = -i eta a)",
                  [this](CriterionResult& r) { ac06(r); });
        criterion("AC07", "implicit modulus identity |I| = sqrt(1 - A^2)",
                  [this](CriterionResult& r) { ac07(r); });
        criterion("AC08", "connection formula residual vanishes",
                  [this](CriterionResult& r) { ac08(r); });
        criterion("AC09", "nonlinearity-defect identity",
                  [this](CriterionResult& r) { ac09(r); });
        criterion("AC10", "cylinder-function solution matches the propagated one",
                  [this](CriterionResult& r) { ac10(r); });
        criterion("AC11", "normalization holds on every propagated trajectory",
                  [this](CriterionResult& r) { ac11(r); });
        criterion("AC12", "adiabatic early-time account",
                  [this](CriterionResult& r) { ac12(r); });
        criterion("AC13", "three-domain Riccati asymptotics",
                  [this](CriterionResult& r) { ac13(r); });
        criterion("AC14", "special-function kernels",
                  [this](CriterionResult& r) { ac14(r); });
        return results_;
    }

private:
    Config config_;
    std::vector<CriterionResult> results_;
    double worst_normalization_ = 0.0;

    SolverConfig solver_config(std::size_t points) const {
        SolverConfig cfg;
        cfg.rel_tol = config_.rel_tol;
        cfg.abs_tol = config_.abs_tol;
        cfg.output_points = points;
        return cfg;
    }

    template <typename Body>
    void criterion(const std::string& id, const std::string& description, Body&& body) {
        CriterionResult r;
        r.id = id;
        r.description = description;
        const auto start = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception& ex) {
            r.measurements.push_back({std::string("exception: ") + ex.what(), 1.0, 0.0, false});
        }
        r.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        r.pass = true;
        for (const auto& m : r.measurements) r.pass = r.pass && m.within;
        results_.push_back(std::move(r));
    }

    static Measurement deviation(const std::string& name, double value, double threshold) {
        return {name, value, threshold, std::abs(value) <= threshold};
    }

    void track_normalization(const Trajectory& traj) {
        worst_normalization_ = std::max(worst_normalization_, max_normalization_defect(traj));
    }

    // --- shared long run (eps 4, tau0 54.270), reused by AC01/AC02
    const Trajectory& long_run() {
        if (long_run_.samples.empty()) {
            long_run_ = solve_schroedinger(Params(4.0, 54.270), solver_config(101));
            track_normalization(long_run_);
        }
        return long_run_;
    }
    Trajectory long_run_{Params(1.0, 1.0), Picture::schroedinger, {}, {}};

    void ac01(CriterionResult& r) {
        const auto start = std::chrono::steady_clock::now();
        const auto& traj = long_run();
        const double run_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        const double target = exact::asymptotic_a_modulus(4.0);
        r.measurements.push_back(deviation("|a(tau0)| - e^{-pi/8}",
                                           std::abs(traj.samples.back().a) - target, 5e-3));
        r.measurements.push_back({"runtime_ms", run_ms, 30000.0, run_ms <= 30000.0});
    }

    void ac02(CriterionResult& r) {
        const auto& traj = long_run();
        const double target = exact::asymptotic_b_modulus(4.0);
        r.measurements.push_back(deviation("|b(tau0)| - sqrt(1-e^{-pi/4})",
                                           std::abs(traj.samples.back().b) - target, 5e-3));
    }

    void ac03(CriterionResult& r) {
        const Params p(4.0, 8.581);
        const auto traj = solve_schroedinger(p, solver_config(41));
        track_normalization(traj);
        const double phi = exact::asymptotic_b_phase(p);
        r.measurements.push_back(deviation(
            "arg b_ode(tau0) vs phi",
            circular_distance(std::arg(traj.samples.back().b), phi), 2e-2));
        const auto ex = exact::exact_amplitudes(p, p.tau0);
        r.measurements.push_back(
            deviation("arg b_exact(tau0) vs phi", circular_distance(std::arg(ex.b), phi), 2e-2));
        r.measurements.push_back(deviation(
            "stated constants 3pi/4 and -5pi/4 mod 2pi",
            wrap_to_pi(0.75 * kPi - (-1.25 * kPi)), 1e-12));
    }

    void ac04(CriterionResult& r) {
        for (const auto& [eps, tau0] : {std::pair{1.0, 20.0}, {4.0, 54.27}, {10.0, 20.0}}) {
            const Params p(eps, tau0);
            const double closed = markov::a_markov_final(p);
            std::ostringstream tag;
            tag << "(eps=" << eps << ", tau0=" << tau0 << ")";
            r.measurements.push_back(
                deviation("exp(-|F|^2/2) vs e^{-pi/2eps} " + tag.str(),
                          closed - markov::lz_probability_amplitude(eps), 2.0 / (eps * tau0)));

            // direct integration of the linearized amplitude equation
            detail::State<1> y{cplx{1.0, 0.0}};
            detail::Dopri5Options opt;
            opt.rel_tol = config_.rel_tol;
            opt.abs_tol = config_.abs_tol;
            opt.max_step_at = [eps](double t) {
                return kPi / (4.0 * (eps * std::abs(t) + 1.0));
            };
            auto rhs = [&p, eps](double t, const detail::State<1>& s, detail::State<1>& d) {
                d[0] = (cplx{0.0, eps * t} - markov::eta_markov(p, t)) * s[0];
            };
            detail::integrate_dopri5<1>(rhs, y, -tau0, tau0, opt,
                                        [](double, double, const auto&) {});
            r.measurements.push_back(deviation("closed form vs ODE route " + tag.str(),
                                               std::abs(markov::a_markov(p, tau0) - y[0]),
                                               1e-8));
        }
    }

    void ac05(CriterionResult& r) {
        const double gap4 =
            markov::b_exact_asymptotic_modulus(4.0) - markov::b_markov_asymptotic_modulus(4.0);
        r.measurements.push_back(
            deviation("b-channel gap at eps=4 vs documented 0.13920", gap4 - 0.139196802,
                      1e-3));
        r.notes.push_back("eps=4 linearized |b| misses the exact value by " +
                          std::to_string(gap4) + " (expected, structural)");
        const double rel100 = (markov::b_exact_asymptotic_modulus(100.0) -
                               markov::b_markov_asymptotic_modulus(100.0)) /
                              markov::b_exact_asymptotic_modulus(100.0);
        r.measurements.push_back(deviation("relative gap at eps=100", rel100, 0.02));
    }

    void ac06(CriterionResult& r) {
        const Params p(4.0, 8.581);
        const auto cfg = solver_config(200);
        const auto ode = solve_schroedinger(p, cfg);
        const auto ric = solve_riccati(p, cfg);
        track_normalization(ode);
        ac07_solution_ = ric;
        double worst = 0.0;
        for (std::size_t i = 0; i < ode.samples.size(); ++i)
            worst = std::max(worst, std::abs(ode.samples[i].b + cplx{0.0, 1.0} *
                                                                    ric.samples[i].eta *
                                                                    ode.samples[i].a));
        r.measurements.push_back(deviation("max |b + i eta a| on 200 points", worst, 1e-6));
    }

    void ac07(CriterionResult& r) {
        if (ac07_solution_.samples.empty())
            ac07_solution_ = solve_riccati(Params(4.0, 8.581), solver_config(200));
        const auto report = riccati::implicit_identity_check(ac07_solution_);
        r.measurements.push_back(
            deviation("max | |I| - sqrt(1-A^2) |", report.max_modulus_defect, 1e-6));
    }
    RiccatiSolution ac07_solution_{Params(1.0, 1.0), -1.0, {}, {}, {}};

    void ac08(CriterionResult& r) {
        for (const double eps : {1.0, 4.0}) {
            for (const double tau0 : {5.0, 20.0}) {
                const Params p(eps, tau0);
                double worst = 0.0;
                for (int k = 0; k <= 200; ++k) {
                    const double tau = tau0 * k / 200.0;
                    worst = std::max(worst, std::abs(markov::connection_residual(p, tau)));
                }
                std::ostringstream tag;
                tag << "max residual (eps=" << eps << ", tau0=" << tau0 << ")";
                r.measurements.push_back(deviation(tag.str(), worst, 1e-10));
            }
        }
    }

    void ac09(CriterionResult& r) {
        const auto sol = solve_riccati(Params(4.0, 10.0), solver_config(201));
        const auto defects = riccati::markov_defect(sol);
        double worst = 0.0;
        for (double d : defects) worst = std::max(worst, d);
        r.measurements.push_back(deviation("max defect on 201 points", worst, 1e-5));
    }

    void ac10(CriterionResult& r) {
        const Params p(4.0, 8.581);
        const auto ode = solve_schroedinger(p, solver_config(100));
        track_normalization(ode);
        double worst_a = 0.0, worst_b = 0.0;
        for (const auto& s : ode.samples) {
            const auto ex = exact::exact_amplitudes(p, s.tau);
            worst_a = std::max(worst_a, std::abs(ex.a - s.a));
            worst_b = std::max(worst_b, std::abs(ex.b - s.b));
        }
        r.measurements.push_back(deviation("max |a_cyl - a_ode| on 100 points", worst_a, 1e-6));
        r.measurements.push_back(deviation("max |b_cyl - b_ode| on 100 points", worst_b, 1e-6));
    }

    void ac11(CriterionResult& r) {
        // make sure the contributing runs happened
        long_run();
        if (ac12_run_.samples.empty()) {
            ac12_run_ = solve_schroedinger(Params(4.0, 20.0), solver_config(201));
            track_normalization(ac12_run_);
        }
        r.measurements.push_back(
            deviation("max normalization defect across all runs", worst_normalization_, 1e-9));
    }
    Trajectory ac12_run_{Params(1.0, 1.0), Picture::schroedinger, {}, {}};

    void ac12(CriterionResult& r) {
        const Params p(4.0, 20.0);
        if (ac12_run_.samples.empty()) {
            ac12_run_ = solve_schroedinger(p, solver_config(201));
            track_normalization(ac12_run_);
        }
        double worst_a = 0.0;
        for (const auto& s : ac12_run_.samples) {
            if (s.tau < -10.0 - 1e-9) {
                const auto ad = adiabatic::propagate_adiabatic(p, s.tau);
                worst_a = std::max(worst_a, std::abs(ad.pair.a - s.a));
            }
        }
        r.measurements.push_back(deviation("max |a_adiabatic - a_ode| on [-20,-10]", worst_a, 1e-2));

        double worst_h = 0.0;
        for (int k = 0; k <= 100; ++k) {
            const double tau = -20.0 + 10.0 * k / 100.0;
            const auto early = adiabatic::a_early_time_closed_form(p, tau);
            const auto approx = markov::negative_time_approximants(p, tau);
            worst_h = std::max(worst_h, std::abs(early.h_bar - approx.H));
        }
        r.measurements.push_back(deviation("max |Hbar - H_approx| on [-20,-10]", worst_h, 1e-2));

        // oscillation amplitude of the phase velocity around its smooth part
        double lo = 1e300, hi = -1e300;
        for (int k = 0; k <= 4000; ++k) {
            const double tau = -15.0 + 5.0 * k / 4000.0;
            const double smooth =
                -p.epsilon * std::abs(tau) - 1.0 / (2.0 * p.epsilon * std::abs(tau));
            const double rpl = markov::phase_velocity_markov(p, tau) - smooth;
            lo = std::min(lo, rpl);
            hi = std::max(hi, rpl);
        }
        const double amp = 0.5 * (hi - lo);
        const double expected = 1.0 / (2.0 * p.epsilon * p.tau0);
        r.measurements.push_back(
            deviation("phase-velocity oscillation amplitude vs 1/(2 eps tau0)",
                      amp / expected - 1.0, 0.2));
    }

    void ac13(CriterionResult& r) {
        // (i) far-start expansion against a seeded solve
        {
            const Params p(4.0, 40.0);
            SolverConfig cfg = solver_config(2);
            cfg.output_grid = {-40.0, -20.0, -5.0};
            const cplx seed = 1.0 / (cplx{0.0, 2.0 * p.epsilon} * -40.0);
            const auto sol = solve_riccati_seeded(p, cfg, seed, -40.0);
            const cplx eta_num = sol.samples.back().eta;
            const auto expansion = riccati::eta_large_negative(p, -5.0);
            r.measurements.push_back(
                deviation("far-start expansion vs numeric eta at tau=-5",
                          std::abs(expansion.value - eta_num), 1e-3));
        }
        // (ii) quadratic model around the crossing
        {
            const Params p(4.0, 8.581);
            SolverConfig cfg = solver_config(2);
            for (int k = 0; k <= 80; ++k) cfg.output_grid.push_back(-0.1 + 0.2 * k / 80.0);
            const auto sol = solve_riccati(p, cfg);
            const cplx eta0 = sol.samples[40].eta;  // tau = 0
            const auto taylor = riccati::eta_taylor0_exact(eta0, p);
            double worst = 0.0;
            for (const auto& s : sol.samples) {
                const cplx model =
                    eta0 + taylor.first * s.tau + 0.5 * taylor.second * s.tau * s.tau;
                worst = std::max(worst, std::abs(model - s.eta));
            }
            r.measurements.push_back(deviation("quadratic model on |tau|<=0.1", worst, 5e-3));
        }
        // (iii) additive iterate beats the linearized solution at late times
        {
            const Params p(4.0, 10.0);
            SolverConfig cfg = solver_config(2);
            for (int k = 0; k <= 100; ++k) cfg.output_grid.push_back(10.0 * k / 100.0);
            const auto sol = solve_riccati(p, cfg);
            double worst_iter = 0.0, worst_markov = 0.0;
            for (const auto& s : sol.samples) {
                worst_iter = std::max(
                    worst_iter, std::abs(riccati::eta_iterated_additive(p, s.tau) - s.eta));
                worst_markov = std::max(
                    worst_markov, std::abs(markov::eta_markov(p, s.tau) - s.eta));
            }
            r.measurements.push_back({"iterate max error " + dataset_double(worst_iter) +
                                          " < linearized max error " +
                                          dataset_double(worst_markov),
                                      worst_iter, worst_markov, worst_iter < worst_markov});
        }
    }

    static std::string dataset_double(double x) {
        std::ostringstream s;
        s.precision(6);
        s << x;
        return s.str();
    }

    void ac14(CriterionResult& r) {
        // order-zero closed form
        double worst0 = 0.0;
        for (const cplx z : {cplx{2.0, 0.0}, cplx{10.0, 0.0}, cplx{2.1213, 2.1213},
                             cplx{-3.0, 1.0}}) {
            const cplx ref = std::exp(-z * z / 4.0);
            worst0 = std::max(worst0,
                              std::abs(specfun::parabolic_cylinder_D(cplx{0.0, 0.0}, z) - ref) /
                                  std::abs(ref));
        }
        r.measurements.push_back(deviation("max relative error of order-0 closed form", worst0, 1e-12));

        // derivative relation at nu = -1 - i/8, z = 3 e^{i pi/4}
        {
            const cplx nu{-1.0, -0.125};
            const cplx z = 3.0 * std::polar(1.0, kPi / 4.0);
            const double h = 5e-3;
            cplx stencil[5];
            for (int k = -2; k <= 2; ++k)
                stencil[k + 2] = specfun::parabolic_cylinder_D(nu, z + cplx{h * k, 0.0});
            const cplx deriv =
                (stencil[0] - 8.0 * stencil[1] + 8.0 * stencil[3] - stencil[4]) / (12.0 * h);
            const cplx residual = deriv - 0.5 * z * stencil[2] +
                                  specfun::parabolic_cylinder_D(nu + 1.0, z);
            const double scale = std::abs(deriv) + std::abs(0.5 * z * stencil[2]) +
                                 std::abs(specfun::parabolic_cylinder_D(nu + 1.0, z));
            r.measurements.push_back(
                deviation("derivative relation residual (relative)", std::abs(residual) / scale,
                          1e-9));
        }

        // Gamma identities at eps = 4
        {
            const cplx i8{0.0, 0.125};
            const cplx lhs = specfun::gamma(1.0 + i8);
            const cplx rhs = i8 * specfun::gamma(i8);
            r.measurements.push_back(
                deviation("functional equation residual", std::abs(lhs - rhs) / std::abs(lhs),
                          1e-12));
            const double abs_gamma = std::abs(specfun::gamma(i8));
            const double closed = std::sqrt(kPi / (0.125 * std::sinh(kPi * 0.125)));
            r.measurements.push_back(deviation("modulus identity residual",
                                               (abs_gamma - closed) / closed, 1e-12));
        }

        // chirp-constant tail bound
        for (const auto& [eps, tau0] :
             {std::pair{4.0, 858.0855}, {4.0, 54.27}, {1.0, 20.0}, {10.0, 20.0}}) {
            const Params p(eps, tau0);
            const double tail = std::abs(specfun::fresnel_F(p) - specfun::fresnel_F_limit(eps));
            std::ostringstream tag;
            tag << "F tail (eps=" << eps << ", tau0=" << tau0 << ")";
            r.measurements.push_back(deviation(tag.str(), tail, 1.0 / (eps * tau0)));
        }
    }
};

}  // namespace

std::vector<CriterionResult> run_all(const Config& config) { return Runner(config).run(); }

std::size_t count_failures(const std::vector<CriterionResult>& results) {
    std::size_t n = 0;
    for (const auto& r : results) n += r.pass ? 0 : 1;
    return n;
}

std::string to_json(const std::vector<CriterionResult>& results) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["description"] = r.description;
        j["pass"] = r.pass;
        j["runtime_ms"] = r.runtime_ms;
        nlohmann::ordered_json ms = nlohmann::ordered_json::array();
        for (const auto& m : r.measurements) {
            nlohmann::ordered_json mj;
            mj["name"] = m.name;
            mj["value"] = m.value;
            mj["threshold"] = m.threshold;
            mj["within"] = m.within;
            ms.push_back(std::move(mj));
        }
        j["measurements"] = std::move(ms);
        if (!r.notes.empty()) j["notes"] = r.notes;
        out.push_back(std::move(j));
    }
    return out.dump(2);
}

std::string to_text(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << r.id << (r.pass ? " PASS " : " FAIL ") << r.runtime_ms << " ms  "
            << r.description << "\n";
        for (const auto& m : r.measurements)
            if (!m.within)
                out << "    " << m.name << ": " << m.value << " exceeds " << m.threshold
                    << "\n";
    }
    out << count_failures(results) << " of " << results.size() << " criteria failed\n";
    return out.str();
}

}  // namespace lz::acceptance
