#include "lz/markov.hpp"

#include <cmath>
#include <numbers>

#include "lz/detail/ddouble.hpp"
#include "lz/quadrature.hpp"
#include "lz/specfun.hpp"

namespace lz::markov {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{i eps (tau0^2 - tau^2)}, the recurring early-time oscillation phase
cplx cis_eps_diff(double eps, double tau0, double tau) {
    using namespace detail;
    const dd diff = dd_sub(two_prod(tau0, tau0), two_prod(tau, tau));
    return cis_dd(dd_mul(diff, dd{eps, 0.0}));
}

quadrature::Options h_quad_options() {
    quadrature::Options opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    return opt;
}

}  // namespace

cplx eta_markov(const Params& params, double tau) {
    return detail::cis_prod(-params.epsilon, tau, tau) * specfun::chirp_integral(params, tau);
}

cplx h_markov(const Params& params, double tau) {
    return quadrature::integrate_oscillatory(
        [&](double s) { return eta_markov(params, s); }, -params.tau0, tau, params.epsilon,
        h_quad_options());
}

cplx a_markov(const Params& params, double tau) {
    const cplx start_phase = detail::cis_prod(-0.5 * params.epsilon, params.tau0, params.tau0);
    const cplx dyn_phase = detail::cis_prod(0.5 * params.epsilon, tau, tau);
    return start_phase * dyn_phase * std::exp(-h_markov(params, tau));
}

cplx a_markov_interaction(const Params& params, double tau) {
    return detail::cis_prod(-0.5 * params.epsilon, tau, tau) * a_markov(params, tau);
}

cplx b_markov(const Params& params, double tau) {
    return cplx{0.0, -1.0} * eta_markov(params, tau) * a_markov(params, tau);
}

double phase_velocity_markov(const Params& params, double tau) {
    return params.epsilon * tau - eta_markov(params, tau).imag();
}

cplx connection_residual(const Params& params, double tau) {
    return eta_markov(params, tau) + eta_markov(params, -tau) -
           specfun::fresnel_F(params) * detail::cis_prod(-params.epsilon, tau, tau);
}

StueckelbergFactors stueckelberg_factorization(const Params& params, double tau) {
    if (!(tau > 0.0))
        throw ContractViolation("stueckelberg_factorization: requires tau > 0");
    const cplx inner = std::conj(specfun::chirp_integral(params, tau) -
                                 specfun::chirp_integral(params, 0.0));
    return {a_markov(params, -tau), std::exp(-specfun::fresnel_F(params) * inner)};
}

double a_markov_final(const Params& params) {
    return std::exp(-0.5 * std::norm(specfun::fresnel_F(params)));
}

double lz_probability_amplitude(double epsilon) { return std::exp(-kPi / (2.0 * epsilon)); }

double b_markov_asymptotic_modulus(double epsilon) {
    return std::sqrt(kPi / epsilon) * std::exp(-kPi / (2.0 * epsilon));
}

double b_exact_asymptotic_modulus(double epsilon) {
    return std::sqrt(-std::expm1(-kPi / epsilon));
}

NegativeTimeApproximants negative_time_approximants(const Params& params, double tau) {
    const double eps = params.epsilon;
    const double tau0 = params.tau0;
    const double at = std::abs(tau);
    NegativeTimeApproximants out;
    out.in_validity_region = tau < 0.0 && eps * at >= 3.0 && at <= tau0 + 1e-12;

    const cplx osc = cis_eps_diff(eps, tau0, tau);
    const cplx i{0.0, 1.0};
    out.eta = (i / (2.0 * eps)) * (1.0 / at - osc / tau0);
    // log term: integral of (i/2eps)/|s| from -tau0 to -|tau|
    out.H = (i / (2.0 * eps)) * std::log(tau0 / at) + 1.0 / (4.0 * eps * eps * tau0 * tau0) -
            osc / (4.0 * eps * eps * tau0 * at);
    out.phase_velocity =
        -eps * at - 1.0 / (2.0 * eps * at) + osc.real() / (2.0 * eps * tau0);
    const cplx start_phase = detail::cis_prod(eps, tau0, tau0);
    const double osc_integral =
        (start_phase * std::conj(specfun::chirp_integral(params, tau))).imag();
    out.A = std::exp(-osc_integral / (2.0 * eps * tau0));
    return out;
}

MarkovTaylor eta_markov_taylor0(const Params& params) {
    const cplx F = specfun::fresnel_F(params);
    return {0.5 * F, cplx{1.0, 0.0}, cplx{0.0, -params.epsilon} * F};
}

double MarkovSolution::A(std::size_t i) const { return std::exp(-samples[i].H.real()); }

double MarkovSolution::varphi(std::size_t i) const {
    const double tau = samples[i].tau;
    return -0.5 * params.epsilon * (params.tau0 * params.tau0 - tau * tau) -
           samples[i].H.imag();
}

MarkovSolution markov_solution(const Params& params, const std::vector<double>& grid) {
    MarkovSolution sol{params, {}};
    sol.samples.reserve(grid.size());
    cplx H{0.0, 0.0};
    double prev = -params.tau0;
    for (double tau : grid) {
        if (tau < prev)
            throw std::invalid_argument("markov_solution: grid must be ascending");
        H += quadrature::integrate_oscillatory(
            [&](double s) { return eta_markov(params, s); }, prev, tau, params.epsilon,
            h_quad_options());
        sol.samples.push_back({tau, eta_markov(params, tau), H});
        prev = tau;
    }
    return sol;
}

}  // namespace lz::markov
