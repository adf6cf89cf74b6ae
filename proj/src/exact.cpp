#include "lz/exact.hpp"

#include <cmath>
#include <numbers>

#include "lz/detail/ddouble.hpp"

namespace lz::exact {

namespace {

constexpr double kPi = std::numbers::pi;

// log(e^{la} + e^{lb}) without overflow; also reports the cancellation
// ratio |sum| / max(|terms|).
cplx log_sum(cplx la, cplx lb, double* cancellation = nullptr) {
    const double m = std::max(la.real(), lb.real());
    const cplx s = std::exp(la - m) + std::exp(lb - m);
    if (cancellation) *cancellation = std::abs(s) / 2.0;
    return m + std::log(s);
}

struct LogEvals {
    cplx d_nu_pos, d_nu_neg;         // log D_nu(+-z)
    cplx d_nu1_pos, d_nu1_neg;       // log D_{nu+1}(+-z)
    bool degraded = false;
};

LogEvals evaluate_family(const Params& params, cplx z) {
    const specfun::CylinderOrder order(params.epsilon);
    LogEvals out;
    const auto e1 = specfun::parabolic_cylinder_D_eval(order.nu, z);
    const auto e2 = specfun::parabolic_cylinder_D_eval(order.nu, -z);
    const auto e3 = specfun::parabolic_cylinder_D_eval(order.nu + 1.0, z);
    const auto e4 = specfun::parabolic_cylinder_D_eval(order.nu + 1.0, -z);
    out.d_nu_pos = e1.log_value;
    out.d_nu_neg = e2.log_value;
    out.d_nu1_pos = e3.log_value;
    out.d_nu1_neg = e4.log_value;
    out.degraded = e1.degraded || e2.degraded || e3.degraded || e4.degraded;
    return out;
}

// log of M = D_nu(-z0) D_{nu+1}(z0) + D_nu(z0) D_{nu+1}(-z0)
cplx log_determinant(const LogEvals& at_z0) {
    return log_sum(at_z0.d_nu_neg + at_z0.d_nu1_pos, at_z0.d_nu_pos + at_z0.d_nu1_neg);
}

}  // namespace

cplx scale_z(const Params& params, double tau) {
    const double r = std::sqrt(params.epsilon) * tau;  // sqrt(2 eps) tau / sqrt(2)
    return {r, r};
}

CylinderCoefficients coefficients_general(cplx a0, cplx a0_slope, const Params& params) {
    const specfun::CylinderOrder order(params.epsilon);
    const cplx z0 = scale_z(params, params.tau0);
    const cplx d_nu_pos = specfun::parabolic_cylinder_D(order.nu, z0);
    const cplx d_nu_neg = specfun::parabolic_cylinder_D(order.nu, -z0);
    const cplx d_nu1_pos = specfun::parabolic_cylinder_D(order.nu + 1.0, z0);
    const cplx d_nu1_neg = specfun::parabolic_cylinder_D(order.nu + 1.0, -z0);

    const cplx det = d_nu_neg * d_nu1_pos + d_nu_pos * d_nu1_neg;
    const double scale = std::abs(d_nu_neg * d_nu1_pos) + std::abs(d_nu_pos * d_nu1_neg);
    if (!(std::abs(det) > 1e-14 * scale))
        throw NumericalError("coefficients_general: degenerate solution pair");

    const cplx forced = 0.5 * z0 * a0 + a0_slope;
    const cplx a_plus = (d_nu1_pos * a0 - d_nu_pos * forced) / det;
    const cplx a_minus = (d_nu1_neg * a0 + d_nu_neg * forced) / det;
    return {a_plus, a_minus, det, params};
}

CylinderCoefficients coefficients_propagation_initial_data(const Params& params) {
    const cplx z0 = scale_z(params, params.tau0);
    return coefficients_general(cplx{1.0, 0.0}, -0.5 * z0, params);
}

GeneralAmplitudes general_amplitudes(const CylinderCoefficients& coeffs, double tau) {
    const Params& params = coeffs.params;
    const specfun::CylinderOrder order(params.epsilon);
    const cplx z = scale_z(params, tau);
    const cplx d_nu_pos = specfun::parabolic_cylinder_D(order.nu, z);
    const cplx d_nu_neg = specfun::parabolic_cylinder_D(order.nu, -z);
    const cplx d_nu1_pos = specfun::parabolic_cylinder_D(order.nu + 1.0, z);
    const cplx d_nu1_neg = specfun::parabolic_cylinder_D(order.nu + 1.0, -z);

    GeneralAmplitudes out;
    out.a = coeffs.a_plus * d_nu_pos + coeffs.a_minus * d_nu_neg;
    const cplx prefactor =
        std::sqrt(2.0 * params.epsilon) * std::polar(1.0, -kPi / 4.0);
    out.b = prefactor * (coeffs.a_plus * d_nu1_pos - coeffs.a_minus * d_nu1_neg);
    return out;
}

ExactAmplitudes exact_amplitudes(const Params& params, double tau) {
    const cplx z0 = scale_z(params, params.tau0);
    const cplx z = scale_z(params, tau);
    const auto at_z0 = evaluate_family(params, z0);
    const auto at_z = tau == params.tau0 ? at_z0 : evaluate_family(params, z);

    ExactAmplitudes out;
    out.tau = tau;
    out.degraded = at_z0.degraded || at_z.degraded;
    const cplx log_det = log_determinant(at_z0);

    double cancel_a = 1.0;
    const cplx log_num_a =
        log_sum(at_z0.d_nu1_pos + at_z.d_nu_pos, at_z0.d_nu1_neg + at_z.d_nu_neg, &cancel_a);
    out.a = std::exp(log_num_a - log_det);
    out.near_node = cancel_a < 1e-10;

    // difference of products: flip the sign of the second term through +i pi
    const cplx log_num_b = log_sum(at_z0.d_nu1_pos + at_z.d_nu1_pos,
                                   at_z0.d_nu1_neg + at_z.d_nu1_neg + cplx{0.0, kPi});
    const cplx prefactor =
        std::sqrt(2.0 * params.epsilon) * std::polar(1.0, -kPi / 4.0);
    out.b = prefactor * std::exp(log_num_b - log_det);
    out.eta = cplx{0.0, 1.0} * out.b / out.a;
    return out;
}

cplx amplitude_a_exact(const Params& params, double tau) {
    return exact_amplitudes(params, tau).a;
}

cplx amplitude_b_exact(const Params& params, double tau) {
    return exact_amplitudes(params, tau).b;
}

cplx eta_exact(const Params& params, double tau) {
    return exact_amplitudes(params, tau).eta;
}

double asymptotic_a_modulus(double epsilon) { return std::exp(-kPi / (2.0 * epsilon)); }

double asymptotic_b_modulus(double epsilon) { return std::sqrt(-std::expm1(-kPi / epsilon)); }

double asymptotic_eta_modulus(double epsilon) { return std::sqrt(std::expm1(kPi / epsilon)); }

double asymptotic_b_phase(const Params& params) {
    using namespace detail;
    const double eps = params.epsilon;
    // fold the large quadratic term in double-double before mixing it with
    // the O(1) pieces
    const double quad_mod =
        dd_mod_two_pi(dd_mul(two_prod(params.tau0, params.tau0), dd{eps, 0.0}));
    const double log_term = std::log(std::sqrt(2.0 * eps) * params.tau0) / eps;
    const double gamma_arg = specfun::log_gamma(cplx{1.0, 0.5 / eps}).imag();
    // constant -pi/4: the value consistent with the propagated b (the two
    // textbook constants 3pi/4 and -5pi/4 describe the opposite-sign b and
    // agree with each other mod 2pi)
    return wrap_to_pi(-0.25 * kPi - quad_mod - log_term + gamma_arg);
}

double asymptotic_eta_phase(const Params& params) {
    return wrap_to_pi(asymptotic_b_phase(params) + kPi / 2.0);
}

}  // namespace lz::exact
