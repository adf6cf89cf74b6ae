#include "lz/adiabatic.hpp"

#include <cmath>

#include "lz/detail/ddouble.hpp"

namespace lz::adiabatic {

namespace {

double window_edge(const Params& params) { return -std::max(3.0 / params.epsilon, 1.0); }

double antiderivative(double epsilon, double s) {
    const double es = epsilon * s;
    return 0.5 * s * std::sqrt(es * es + 1.0) + 0.5 * std::asinh(es) / epsilon;
}

}  // namespace

Eigensystem eigensystem(const Params& params, double tau) {
    const double et = params.epsilon * tau;
    Eigensystem sys;
    sys.tau = tau;
    sys.theta = std::hypot(et, 1.0);
    if (et <= 0.0) {
        sys.v_plus = -et + sys.theta;    // no cancellation for tau <= 0
        sys.v_minus = -1.0 / sys.v_plus; // from v_+ v_- = -1
    } else {
        sys.v_minus = -et - sys.theta;
        sys.v_plus = -1.0 / sys.v_minus;
    }
    sys.n_plus = 1.0 / std::sqrt(1.0 + sys.v_plus * sys.v_plus);
    sys.n_minus = 1.0 / std::sqrt(1.0 + sys.v_minus * sys.v_minus);
    sys.G = {{{sys.v_plus * sys.n_plus, sys.v_minus * sys.n_minus},
              {sys.n_plus, sys.n_minus}}};
    const double spread = 2.0 * sys.theta;  // v_+ - v_-
    sys.G_inv = {{{1.0 / (sys.n_plus * spread), -sys.v_minus / (sys.n_plus * spread)},
                  {-1.0 / (sys.n_minus * spread), sys.v_plus / (sys.n_minus * spread)}}};
    return sys;
}

double chi(const Params& params, double tau) {
    if (std::abs(tau) > params.tau0 + 1e-12)
        throw std::invalid_argument("chi: |tau| must not exceed tau0");
    return antiderivative(params.epsilon, tau) - antiderivative(params.epsilon, -params.tau0);
}

AdiabaticResult propagate_adiabatic(const Params& params, double tau) {
    AdiabaticResult out;
    out.in_window = tau <= window_edge(params) && tau >= -params.tau0 - 1e-12;

    const auto start = eigensystem(params, -params.tau0);
    const auto now = eigensystem(params, tau);
    const double phase = chi(params, tau);
    const cplx coeff_plus = start.G_inv[0][0] * std::polar(1.0, -phase);
    const cplx coeff_minus = start.G_inv[1][0] * std::polar(1.0, phase);

    out.pair.tau = tau;
    out.pair.picture = Picture::schroedinger;
    out.pair.a = now.G[0][0] * coeff_plus + now.G[0][1] * coeff_minus;
    out.pair.b = now.G[1][0] * coeff_plus + now.G[1][1] * coeff_minus;
    return out;
}

EarlyTimeClosedForm a_early_time_closed_form(const Params& params, double tau) {
    EarlyTimeClosedForm out;
    out.in_window = tau <= window_edge(params) && tau >= -params.tau0 - 1e-12;

    const double eps = params.epsilon;
    const double tau0 = params.tau0;
    const double at = std::abs(tau);
    const double log_ratio = std::log(tau0 / at);  // integral of 1/|s|, positive
    const cplx osc =
        detail::cis_dd(detail::dd_mul(
            detail::dd_sub(detail::two_prod(tau0, tau0), detail::two_prod(tau, tau)),
            detail::dd{eps, 0.0})) *
        std::polar(1.0, log_ratio / eps);
    out.h_bar = cplx{0.0, 0.5 / eps} * log_ratio + 1.0 / (4.0 * eps * eps * tau0 * tau0) -
                osc / (4.0 * eps * eps * tau0 * at);
    const cplx quad_phase = detail::cis_dd(detail::dd_mul(
        detail::dd_sub(detail::two_prod(tau0, tau0), detail::two_prod(tau, tau)),
        detail::dd{-0.5 * eps, 0.0}));
    out.a = quad_phase * std::exp(-out.h_bar);
    return out;
}

double frozen_g_coupling(const Params& params, double tau) {
    const double h = 1e-6 * (std::abs(tau) + 1.0);
    const auto plus = eigensystem(params, tau + h);
    const auto minus = eigensystem(params, tau - h);
    const auto here = eigensystem(params, tau);
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            double acc = 0.0;
            for (int k = 0; k < 2; ++k)
                acc += here.G_inv[r][k] * (plus.G[k][c] - minus.G[k][c]) / (2.0 * h);
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

}  // namespace lz::adiabatic
