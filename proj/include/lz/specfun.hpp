#ifndef LZ_SPECFUN_HPP
#define LZ_SPECFUN_HPP

#include <complex>

#include "lz/core.hpp"

namespace lz::specfun {

/// Scaled Fresnel integral E(u) = integral_0^u exp(i*pi*t^2/2) dt.
/// Power series below |u| = 4.8 (double-double accumulation), auxiliary
/// asymptotic series above; ~1e-14 relative accuracy throughout.
cplx fresnel_e(double u);

/// Chirp integral C(tau) = integral_{-tau0}^{tau} exp(i*eps*s^2) ds.
/// Evaluated through fresnel_e, not by quadrature.
cplx chirp_integral(const Params& params, double tau);

/// Full-window chirp integral F = C(tau0); tends to sqrt(i*pi/eps) with an
/// O(1/(eps*tau0)) tail as tau0 grows.
cplx fresnel_F(const Params& params);

/// limit of fresnel_F for tau0 -> infinity: sqrt(i*pi/eps).
cplx fresnel_F_limit(double epsilon);

/// Principal-branch log Gamma for complex argument (Lanczos, reflection for
/// Re z < 1/2).  Throws std::domain_error at the poles.
cplx log_gamma(cplx z);

/// exp(log_gamma(z))
cplx gamma(cplx z);

/// Order bookkeeping for the cylinder-function family used by the exact
/// solution: nu = -1 - i/(2 eps) and the standard-form constant
/// c = i/(2 eps) + 1/2 = -nu - 1/2.
struct CylinderOrder {
    cplx nu;
    cplx c;
    explicit CylinderOrder(double epsilon)
        : nu(-1.0, -0.5 / epsilon), c(0.5, 0.5 / epsilon) {}
};

/// Result of a parabolic cylinder evaluation.  log_value is a logarithm of
/// value (imaginary part not reduced); it stays finite where value would
/// over- or underflow.  degraded is set when the series/asymptotic
/// cross-check near the regime boundary disagrees beyond 1e-8.
struct CylinderEval {
    cplx value;
    cplx log_value;
    bool degraded = false;
};

/// Parabolic cylinder function D_nu(z) for complex order and argument.
/// Maclaurin series (double-double) below the crossover radius, sectorial
/// asymptotic expansions above it.  Guaranteed for the order family of
/// CylinderOrder with eps in [0.25, 100] and |z| <= 40.
CylinderEval parabolic_cylinder_D_eval(cplx order, cplx z);
cplx parabolic_cylinder_D(cplx order, cplx z);

/// Crossover radius between the series and asymptotic regimes.
double cylinder_crossover_radius();

/// Leading asymptotic form exp(-z^2/4) z^order with correction series,
/// valid for |arg z| < 3*pi/4.  Throws ContractViolation outside the sector.
cplx cylinder_asymptotic_dominant(cplx order, cplx z);

/// Two-exponential sector form for -5*pi/4 < arg z < -pi/4:
/// exp(-z^2/4) z^order + sqrt(2*pi)/Gamma(-order) * exp(-i*(order+1)*pi)
///   * exp(z^2/4) z^(-order-1), each with its correction series.
cplx cylinder_asymptotic_subdominant_pair(cplx order, cplx z);

}  // namespace lz::specfun

#endif
