#include "lz/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lz/detail/ddouble.hpp"
#include "lz/markov.hpp"
#include "lz/quadrature.hpp"
#include "lz/specfun.hpp"

namespace lz::riccati {

namespace {
constexpr double kPi = std::numbers::pi;
}

Trajectory reconstruct_amplitudes(const RiccatiSolution& sol) {
    Trajectory traj{sol.params, Picture::schroedinger, {}, sol.meta};
    traj.samples.reserve(sol.samples.size());
    const double eps = sol.params.epsilon;
    const cplx i{0.0, 1.0};
    const cplx start_phase = detail::cis_prod(-0.5 * eps, sol.tau_start, sol.tau_start);
    for (const auto& s : sol.samples) {
        const cplx a = start_phase * detail::cis_prod(0.5 * eps, s.tau, s.tau) * std::exp(-s.H);
        traj.samples.push_back({s.tau, a, -i * s.eta * a, Picture::schroedinger});
    }
    return traj;
}

double eta_modulus_from_A(double A) {
    if (!(A > 0.0) || A > 1.0 + 1e-12)
        throw std::domain_error("eta_modulus_from_A: A must lie in (0, 1]");
    const double clamped = std::min(A, 1.0);
    return std::sqrt(1.0 - clamped * clamped) / clamped;
}

double lambda_of(const RiccatiSolution& sol, std::size_t i) {
    const double tau = sol.samples[i].tau;
    return sol.params.epsilon * tau * tau - sol.samples[i].H.imag();
}

ImplicitIdentityReport implicit_identity_check(const RiccatiSolution& sol,
                                               double start_exclusion) {
    ImplicitIdentityReport report;
    for (std::size_t i = 0; i < sol.samples.size(); ++i) {
        const auto& s = sol.samples[i];
        const double A = std::exp(-s.H.real());
        const double target = std::sqrt(std::max(0.0, 1.0 - A * A));
        report.max_modulus_defect =
            std::max(report.max_modulus_defect, std::abs(std::abs(s.implicit) - target));
        if (s.tau < sol.tau_start + start_exclusion || A > 1.0 - 1e-6) continue;
        const double phi_from_integral = -lambda_of(sol, i) + std::arg(s.implicit);
        report.max_phase_defect =
            std::max(report.max_phase_defect,
                     circular_distance(phi_from_integral, std::arg(s.eta)));
    }
    return report;
}

namespace {

// Dense cumulative quadrature backbone for the iterated solution: nodes at
// a quarter of the oscillation scale, H_M accumulated cell by cell, values
// in between by quintic Hermite.  Both derivatives are closed forms
// (H' = eta_M, H'' = 1 - 2 i eps tau eta_M), which keeps the interpolant
// smooth enough that finite-difference residual checks of the iterated
// solution see quadrature error, not interpolation wiggle.
struct MarkovBackbone {
    Params params;
    std::vector<double> nodes;
    std::vector<cplx> eta;   // eta_M at nodes  (= H')
    std::vector<cplx> eta_dot;  // 1 - 2 i eps tau eta_M  (= H'')
    std::vector<cplx> H;     // cumulative integral of eta_M
    std::vector<cplx> K;     // cumulative integral of e^{-H_M} e^{i eps s^2}

    explicit MarkovBackbone(const Params& p) : params(p) {
        const double eps = params.epsilon;
        double t = -params.tau0;
        nodes.push_back(t);
        while (t < params.tau0) {
            t = std::min(params.tau0, t + kPi / (16.0 * eps * (std::abs(t) + 1.0)));
            nodes.push_back(t);
        }
        eta.resize(nodes.size());
        eta_dot.resize(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            eta[k] = markov::eta_markov(params, nodes[k]);
            eta_dot[k] = 1.0 - 2.0 * cplx{0.0, 1.0} * eps * nodes[k] * eta[k];
        }
        H.resize(nodes.size());
        H[0] = {0.0, 0.0};
        quadrature::Options opt;
        opt.abs_tol = 1e-13;
        opt.rel_tol = 1e-13;
        for (std::size_t k = 1; k < nodes.size(); ++k)
            H[k] = H[k - 1] + quadrature::integrate(
                                  [&](double s) { return markov::eta_markov(params, s); },
                                  nodes[k - 1], nodes[k], opt);
        K.resize(nodes.size());
        K[0] = {0.0, 0.0};
        for (std::size_t k = 1; k < nodes.size(); ++k)
            K[k] = K[k - 1] + quadrature::integrate(
                                  [&](double s) { return k_integrand(k - 1, s); },
                                  nodes[k - 1], nodes[k], opt);
    }

    std::size_t cell_of(double tau) const {
        auto it = std::upper_bound(nodes.begin(), nodes.end(), tau);
        const std::size_t idx = static_cast<std::size_t>(it - nodes.begin());
        return std::min(std::max<std::size_t>(idx, 1) - 1, nodes.size() - 2);
    }

    // quintic Hermite value of H_M inside cell k
    cplx h_at(std::size_t k, double tau) const {
        const double w = nodes[k + 1] - nodes[k];
        const double u = (tau - nodes[k]) / w;
        const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
        const double b0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
        const double b1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
        const double b2 = 0.5 * (u2 - 3.0 * u3 + 3.0 * u4 - u5);
        const double c0 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
        const double c1 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
        const double c2 = 0.5 * (u3 - 2.0 * u4 + u5);
        return b0 * H[k] + b1 * w * eta[k] + b2 * w * w * eta_dot[k] + c0 * H[k + 1] +
               c1 * w * eta[k + 1] + c2 * w * w * eta_dot[k + 1];
    }

    cplx k_integrand(std::size_t k, double s) const {
        return detail::cis_prod(params.epsilon, s, s) * std::exp(-h_at(k, s));
    }

    cplx h_value(double tau) const { return h_at(cell_of(tau), tau); }

    cplx k_value(double tau) const {
        const std::size_t k = cell_of(tau);
        quadrature::Options opt;
        opt.abs_tol = 1e-13;
        opt.rel_tol = 1e-13;
        return K[k] + quadrature::integrate([&](double s) { return k_integrand(k, s); },
                                            nodes[k], tau, opt);
    }
};

}  // namespace

std::vector<cplx> eta_iterated_exponential(const Params& params,
                                           const std::vector<double>& grid) {
    for (double g : grid)
        if (g < -params.tau0 - 1e-12 || g > params.tau0 + 1e-12)
            throw std::invalid_argument("eta_iterated_exponential: grid outside [-tau0, tau0]");
    MarkovBackbone backbone(params);
    std::vector<cplx> out;
    out.reserve(grid.size());
    for (double tau : grid)
        out.push_back(detail::cis_prod(-params.epsilon, tau, tau) *
                      std::exp(backbone.h_value(tau)) * backbone.k_value(tau));
    return out;
}

cplx eta_iterated_additive(const Params& params, double tau) {
    quadrature::Options opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    const cplx correction = quadrature::integrate_oscillatory(
        [&](double s) {
            const cplx eta_m = markov::eta_markov(params, s);
            return eta_m * eta_m * detail::cis_prod(params.epsilon, s, s);
        },
        -params.tau0, tau, params.epsilon, opt);
    return markov::eta_markov(params, tau) +
           detail::cis_prod(-params.epsilon, tau, tau) * correction;
}

SimplifiedIterate eta_iterated_additive_simplified(const Params& params, double tau) {
    SimplifiedIterate out;
    out.in_validity_region = tau >= 3.0 / params.epsilon && tau <= params.tau0 + 1e-12;
    quadrature::Options opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    const cplx correction = quadrature::integrate_oscillatory(
        [&](double s) {
            const cplx eta_m = markov::eta_markov(params, s);
            return eta_m * eta_m * detail::cis_prod(params.epsilon, s, s);
        },
        -params.tau0, tau, params.epsilon, opt);
    out.value = detail::cis_prod(-params.epsilon, tau, tau) *
                (specfun::fresnel_F(params) + correction);
    return out;
}

LargeNegativeEta eta_large_negative(const Params& params, double tau) {
    const double eps = params.epsilon;
    LargeNegativeEta out;
    out.in_validity_region = tau < 0.0 && eps * std::abs(tau) >= 3.0;
    const double t3 = tau * tau * tau;
    out.real_part = -1.0 / (4.0 * eps * eps * t3);
    out.imag_part = -1.0 / (2.0 * eps * tau) + 1.0 / (8.0 * eps * eps * eps * t3);
    out.value = {out.real_part, out.imag_part};
    return out;
}

ExactTaylor eta_taylor0_exact(cplx eta0, const Params& params) {
    const cplx first = 1.0 + eta0 * eta0;
    const cplx second = 2.0 * eta0 * (first - cplx{0.0, params.epsilon});
    return {first, second};
}

std::vector<double> markov_defect(const RiccatiSolution& sol) {
    std::vector<double> out;
    out.reserve(sol.samples.size());
    for (const auto& s : sol.samples) {
        const cplx eta_m = markov::eta_markov(sol.params, s.tau);
        const cplx integral_term =
            detail::cis_prod(-sol.params.epsilon, s.tau, s.tau) * s.nonlinear;
        out.push_back(std::abs(s.eta - eta_m - integral_term));
    }
    return out;
}

}  // namespace lz::riccati
