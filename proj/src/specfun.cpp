#include "lz/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lz/detail/ddouble.hpp"
#include "lz/quadrature.hpp"

namespace lz::specfun {

using detail::cdd;
using detail::dd;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPiHalfHi = 1.5707963267948966;
constexpr double kPiHalfLo = 6.123233995736766e-17;
constexpr double kSqrt2Pi = 2.5066282746310005;

// ---------------------------------------------------------------- Fresnel

// series for E(u) = sum_k (i*pi/2)^k u^(2k+1) / (k! (2k+1)), |u| <= 4.8.
// Double-double accumulation keeps the alternating sum at ~1e-16 relative
// even where the largest term reaches e^{pi u^2/2} ~ 1e15.
cplx fresnel_series(double u) {
    const dd u2 = detail::two_prod(u, u);
    const dd theta = detail::dd_mul(u2, dd{kPiHalfHi, kPiHalfLo});  // pi/2 u^2
    cdd term{dd{u, 0.0}, dd{0.0, 0.0}};
    cdd sum = term;
    for (int k = 1; k <= 600; ++k) {
        // term *= i*theta/k
        const dd re = detail::dd_div(detail::dd_neg(detail::dd_mul(term.im, theta)), k);
        const dd im = detail::dd_div(detail::dd_mul(term.re, theta), k);
        term = {re, im};
        const cdd contrib = detail::cdd_div(term, 2.0 * k + 1.0);
        sum = detail::cdd_add(sum, contrib);
        if (detail::cdd_abs(contrib) < 1e-34 * detail::cdd_abs(sum) && k > 4) break;
    }
    return detail::cdd_value(sum);
}

// tail R(u) = integral_u^inf exp(i*pi*t^2/2) dt
//           = exp(i*pi*u^2/2) * (i/(pi*u)) * sum_k (2k-1)!! (-i/(pi*u^2))^k
// truncated at the smallest term; u >= 4.8 keeps that term below 1e-16.
cplx fresnel_tail(double u) {
    const dd theta = detail::dd_mul(detail::two_prod(u, u), dd{kPiHalfHi, kPiHalfLo});
    const cplx phase = detail::cis_dd(theta);
    const cplx factor = cplx{0.0, -1.0} / (kPi * u * u);
    cplx term{1.0, 0.0};
    cplx sum = term;
    double last = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= (2.0 * k - 1.0) * factor;
        const double mag = std::abs(term);
        if (mag >= last) break;  // asymptotic series turned around
        sum += term;
        last = mag;
        if (mag < 1e-18) break;
    }
    return phase * (cplx{0.0, 1.0} / (kPi * u)) * sum;
}

constexpr double kFresnelCrossover = 4.8;

// ------------------------------------------------------------- log gamma

// Lanczos coefficients (g = 607/128, 15 terms).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx log_gamma_core(cplx z) {
    // Re z >= 1/2
    cplx sum = kLanczosC[0];
    for (int k = 1; k < 15; ++k) sum += kLanczosC[k] / (z - 1.0 + static_cast<double>(k));
    const cplx t = z - 0.5 + kLanczosG;
    return std::log(kSqrt2Pi * sum) + (z - 0.5) * std::log(t) - t;
}

// ------------------------------------------------ cylinder function pieces

constexpr double kCylinderCrossover = 9.0;
constexpr double kCylinderCheckBand = 1.0;   // dual-evaluation annulus half-width
constexpr double kCylinderCheckTol = 1e-8;

// D at the origin: value and derivative, zero where the Gamma factor sits
// on a pole.
cplx cylinder_c0(cplx nu) {
    const cplx g_arg = (1.0 - nu) / 2.0;
    if (is_nonpositive_integer(g_arg)) return {0.0, 0.0};
    return std::exp(0.5 * nu * std::numbers::ln2 + 0.5 * std::log(kPi) - log_gamma(g_arg));
}

cplx cylinder_c1(cplx nu) {
    const cplx g_arg = -nu / 2.0;
    if (is_nonpositive_integer(g_arg)) return {0.0, 0.0};
    return -std::exp(0.5 * (nu + 1.0) * std::numbers::ln2 + 0.5 * std::log(kPi) -
                     log_gamma(g_arg));
}

// Maclaurin series of Weber's equation y'' = (z^2/4 + a) y with
// a = -nu - 1/2, summed in double-double.  Valid for any argument; the
// cancellation grows like e^{|z|^2/4}, which double-double absorbs up to
// the crossover radius with ~1e-14 to spare.
cplx cylinder_series(cplx nu, cplx z) {
    const cplx a = -nu - 0.5;
    const cdd z2 = detail::cdd_mul(detail::cdd_from(z), detail::cdd_from(z));
    const cdd az2 = detail::cdd_mul(z2, detail::cdd_from(a));
    const cdd z4_4 = detail::cdd_div(detail::cdd_mul(z2, z2), 4.0);

    cdd even_prev{};  // E_{m-1}
    cdd even = detail::cdd_from(cylinder_c0(nu));
    cdd odd_prev{};
    cdd odd = detail::cdd_mul(detail::cdd_from(cylinder_c1(nu)), detail::cdd_from(z));
    cdd sum = detail::cdd_add(even, odd);

    int quiet = 0;
    for (int m = 0; m <= 600; ++m) {
        const double k_even = 2.0 * m;
        const cdd even_next = detail::cdd_div(
            detail::cdd_add(detail::cdd_mul(az2, even), detail::cdd_mul(z4_4, even_prev)),
            (k_even + 2.0) * (k_even + 1.0));
        const double k_odd = 2.0 * m + 1.0;
        const cdd odd_next = detail::cdd_div(
            detail::cdd_add(detail::cdd_mul(az2, odd), detail::cdd_mul(z4_4, odd_prev)),
            (k_odd + 2.0) * (k_odd + 1.0));
        even_prev = even;
        even = even_next;
        odd_prev = odd;
        odd = odd_next;
        sum = detail::cdd_add(sum, detail::cdd_add(even, odd));
        const double tail = detail::cdd_abs(even) + detail::cdd_abs(odd);
        if (tail < 1e-34 * std::max(detail::cdd_abs(sum), 1e-300)) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
    }
    return detail::cdd_value(sum);
}

// In the wedge around the positive real axis the function is recessive:
// both parity chains of the Maclaurin series are e^{Re(z^2)/2} times larger
// than their sum, which amplifies the double-precision entry error of the
// series seeds past any useful tolerance.  There the Laplace-type integral
//   D_nu(z) = e^{-z^2/4}/Gamma(-nu) * Integral t^{-nu-1} e^{-t^2/2 - z t} dt
// (valid for Re nu < 0, decaying integrand for Re z > 0) is cancellation
// free.  Orders with Re nu >= -1/2 go through one ladder step
//   D_{nu+1}(z) = z D_nu(z) + P * Integral t^{-nu} e^{-t^2/2 - z t} dt.
bool in_recessive_wedge(cplx z) { return z.real() > 0.0 && (z * z).real() >= 30.0; }

cplx wedge_moment(cplx order, cplx z, int k) {
    const cplx power = -order - 1.0 + static_cast<double>(k);
    const double cutoff = std::min(46.0 / z.real(), std::sqrt(2.0 * 46.0)) + 1.0;
    quadrature::Options opt;
    opt.abs_tol = 1e-16;
    opt.rel_tol = 3e-15;
    opt.max_depth = 52;
    return quadrature::integrate(
        [&](double t) {
            if (t <= 0.0) return cplx{0.0, 0.0};
            return std::exp(power * std::log(t) - 0.5 * t * t - z * t);
        },
        0.0, cutoff, opt);
}

// requires Re(order) < -1/2 and the wedge condition
cplx cylinder_wedge_integral(cplx order, cplx z) {
    const cplx prefactor = std::exp(-z * z / 4.0 - log_gamma(-order));
    return prefactor * wedge_moment(order, z, 0);
}

cplx cylinder_wedge(cplx order, cplx z) {
    if (order.real() < -0.5) return cylinder_wedge_integral(order, z);
    // one ladder step from the next order down
    const cplx lower = order - 1.0;
    const cplx prefactor = std::exp(-z * z / 4.0 - log_gamma(-lower));
    return z * cylinder_wedge_integral(lower, z) + prefactor * wedge_moment(lower, z, 1);
}

// correction series of the e^{-z^2/4} z^rho branch
cplx dominant_correction(cplx rho, cplx z) {
    const cplx inv2z2 = 0.5 / (z * z);
    cplx term{1.0, 0.0};
    cplx sum = term;
    double last = 1.0;
    for (int k = 0; k < 40; ++k) {
        term *= -(rho - 2.0 * k) * (rho - 2.0 * k - 1.0) * inv2z2 / (k + 1.0);
        const double mag = std::abs(term);
        if (mag >= last || !std::isfinite(mag)) break;
        sum += term;
        last = mag;
        if (mag < 1e-18) break;
    }
    return sum;
}

// correction series of the e^{+z^2/4} z^{-rho-1} branch
cplx subdominant_correction(cplx rho, cplx z) {
    const cplx inv2z2 = 0.5 / (z * z);
    cplx term{1.0, 0.0};
    cplx sum = term;
    double last = 1.0;
    for (int k = 0; k < 40; ++k) {
        term *= (rho + 2.0 * k + 1.0) * (rho + 2.0 * k + 2.0) * inv2z2 / (k + 1.0);
        const double mag = std::abs(term);
        if (mag >= last || !std::isfinite(mag)) break;
        sum += term;
        last = mag;
        if (mag < 1e-18) break;
    }
    return sum;
}

cplx log_dominant(cplx rho, cplx z) {
    return -z * z / 4.0 + rho * std::log(z) + std::log(dominant_correction(rho, z));
}

// log of the second-exponential term; sector_sign = -1 for
// -5pi/4 < arg z < -pi/4, +1 for the mirrored sector.
cplx log_subdominant(cplx rho, cplx z, int sector_sign) {
    const cplx coeff_log = std::log(cplx{kSqrt2Pi, 0.0}) - log_gamma(-rho);
    const cplx phase = cplx{0.0, static_cast<double>(sector_sign)} * (rho + 1.0) * kPi;
    return coeff_log + phase + z * z / 4.0 - (rho + 1.0) * std::log(z) +
           std::log(subdominant_correction(rho, z));
}

cplx add_exponentials(cplx log_a, cplx log_b, cplx* log_sum) {
    const double m = std::max(log_a.real(), log_b.real());
    const cplx s = std::exp(log_a - m) + std::exp(log_b - m);
    *log_sum = m + std::log(s);
    return std::exp(*log_sum);
}

// Full asymptotic evaluation.  The second exponential switches on across
// the rays arg z = +-pi/2, where its relative size is e^{-|z|^2/2}; beyond
// the crossover radius the handover is far below double rounding.
cplx cylinder_asymptotic(cplx nu, cplx z, cplx* log_value) {
    const double theta = std::arg(z);
    const cplx l_dom = log_dominant(nu, z);
    const bool order_is_poly = is_nonpositive_integer(-nu);  // 1/Gamma(-nu) = 0
    if ((theta > -kPi / 2.0 && theta <= kPi / 2.0) || order_is_poly) {
        *log_value = l_dom;
        return std::exp(l_dom);
    }
    const int sector_sign = theta > 0.0 ? 1 : -1;
    const cplx l_sub = log_subdominant(nu, z, sector_sign);
    return add_exponentials(l_dom, l_sub, log_value);
}

}  // namespace

cplx fresnel_e(double u) {
    if (u < 0.0) return -fresnel_e(-u);
    if (u <= kFresnelCrossover) return fresnel_series(u);
    return cplx{0.5, 0.5} - fresnel_tail(u);
}

cplx chirp_integral(const Params& params, double tau) {
    const double scale = std::sqrt(kPi / (2.0 * params.epsilon));
    const double stretch = std::sqrt(2.0 * params.epsilon / kPi);
    return scale * (fresnel_e(stretch * tau) + fresnel_e(stretch * params.tau0));
}

cplx fresnel_F(const Params& params) { return chirp_integral(params, params.tau0); }

cplx fresnel_F_limit(double epsilon) {
    const double r = std::sqrt(kPi / (2.0 * epsilon));
    return {r, r};
}

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at nonpositive integer");
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    return std::log(cplx{kPi, 0.0}) - std::log(std::sin(kPi * z)) - log_gamma_core(1.0 - z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

double cylinder_crossover_radius() { return kCylinderCrossover; }

CylinderEval parabolic_cylinder_D_eval(cplx order, cplx z) {
    CylinderEval out;
    const double r = std::abs(z);
    // the wedge route only covers orders reachable from Re(order) < 1/2;
    // beyond that the series runs unguarded (outside the accuracy contract)
    const bool wedge = in_recessive_wedge(z) && order.real() < 0.5 &&
                       !is_nonpositive_integer((1.0 - order) / 2.0) &&
                       !is_nonpositive_integer(-order / 2.0);
    if (r < kCylinderCrossover) {
        out.value = wedge ? cylinder_wedge(order, z) : cylinder_series(order, z);
        out.log_value = std::log(out.value);
    } else {
        out.value = cylinder_asymptotic(order, z, &out.log_value);
    }
    if (std::abs(r - kCylinderCrossover) <= kCylinderCheckBand && r > 0.0) {
        const cplx inner_val = r < kCylinderCrossover
                                   ? out.value
                                   : (wedge ? cylinder_wedge(order, z)
                                            : cylinder_series(order, z));
        cplx asym_log;
        const cplx asym_val =
            r < kCylinderCrossover ? cylinder_asymptotic(order, z, &asym_log) : out.value;
        const double scale = std::max(std::abs(inner_val), std::abs(asym_val));
        if (scale > 0.0 && std::abs(inner_val - asym_val) > kCylinderCheckTol * scale)
            out.degraded = true;
    }
    return out;
}

cplx parabolic_cylinder_D(cplx order, cplx z) {
    return parabolic_cylinder_D_eval(order, z).value;
}

cplx cylinder_asymptotic_dominant(cplx order, cplx z) {
    const double theta = std::arg(z);
    if (!(std::abs(theta) < 3.0 * kPi / 4.0))
        throw ContractViolation("cylinder_asymptotic_dominant: arg z outside |arg z| < 3pi/4");
    return std::exp(log_dominant(order, z));
}

cplx cylinder_asymptotic_subdominant_pair(cplx order, cplx z) {
    const double theta = std::arg(z);
    const bool in_sector = (theta > -kPi && theta < -kPi / 4.0) || theta > 3.0 * kPi / 4.0 ||
                           theta == kPi;
    if (!in_sector)
        throw ContractViolation(
            "cylinder_asymptotic_subdominant_pair: arg z outside (-5pi/4, -pi/4)");
    const int sector_sign = theta > 0.0 ? 1 : -1;
    cplx log_sum;
    return add_exponentials(log_dominant(order, z), log_subdominant(order, z, sector_sign),
                            &log_sum);
}

}  // namespace lz::specfun
