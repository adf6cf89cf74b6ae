#ifndef LZ_MARKOV_HPP
#define LZ_MARKOV_HPP

#include <vector>

#include "lz/core.hpp"

namespace lz::markov {

/// Closed-form linearized solution eta_M(tau) = e^{-i eps tau^2} C(tau),
/// with C the chirp integral.  Solves d/dtau eta_M = -2 i eps tau eta_M + 1
/// from eta_M(-tau0) = 0.
cplx eta_markov(const Params& params, double tau);

/// Running integral H_M(tau) of eta_M, by adaptive Gauss-Kronrod over
/// oscillation-scale cells (absolute target 1e-10).
cplx h_markov(const Params& params, double tau);

/// a_M(tau) = e^{-i eps tau0^2/2} e^{+i eps tau^2/2} e^{-H_M(tau)}.
cplx a_markov(const Params& params, double tau);

/// Interaction-picture variant e^{-i eps tau^2/2} a_M(tau).
cplx a_markov_interaction(const Params& params, double tau);

/// b_M = -i eta_M a_M.
cplx b_markov(const Params& params, double tau);

/// Phase velocity of a_M: eps*tau - Im eta_M(tau).
double phase_velocity_markov(const Params& params, double tau);

/// eta_M(tau) + eta_M(-tau) - F(tau0) e^{-i eps tau^2}; identically zero.
cplx connection_residual(const Params& params, double tau);

/// a_M at positive tau factored over its mirror value and a Fresnel-driven
/// oscillation factor exp(-F(tau0) * conj(C(tau) - C(0))).
struct StueckelbergFactors {
    cplx a_negative;  // a_M(-tau)
    cplx factor;
};
StueckelbergFactors stueckelberg_factorization(const Params& params, double tau);

/// exp(-|F(tau0)|^2 / 2): the closed-form final survival amplitude.
double a_markov_final(const Params& params);

/// The exact asymptote e^{-pi/(2 eps)} it converges to.
double lz_probability_amplitude(double epsilon);

/// Markov prediction for the final |b|: sqrt(pi/eps) e^{-pi/(2 eps)}.
/// Disagrees with the exact sqrt(1 - e^{-pi/eps}) except for eps >> 1.
double b_markov_asymptotic_modulus(double epsilon);

/// exact final |b|
double b_exact_asymptotic_modulus(double epsilon);

/// Early-time closed forms (valid for eps*|tau| >= 3, |tau| <= tau0):
/// eta and H to leading order, the phase velocity including its
/// 1/(2 eps tau0) oscillation, and the oscillating amplitude A.
struct NegativeTimeApproximants {
    cplx eta;
    cplx H;
    double phase_velocity;
    double A;
    bool in_validity_region;
};
NegativeTimeApproximants negative_time_approximants(const Params& params, double tau);

/// Taylor data of eta_M at tau = 0: value F/2, slope 1, curvature -i eps F.
struct MarkovTaylor {
    cplx value;
    cplx first;
    cplx second;
};
MarkovTaylor eta_markov_taylor0(const Params& params);

/// eta_M and cumulative H_M on an ascending grid (cell-by-cell quadrature).
struct MarkovSample {
    double tau;
    cplx eta;
    cplx H;
};
struct MarkovSolution {
    Params params;
    std::vector<MarkovSample> samples;
    double A(std::size_t i) const;       // e^{-Re H}
    double varphi(std::size_t i) const;  // common phase
};
MarkovSolution markov_solution(const Params& params, const std::vector<double>& grid);

}  // namespace lz::markov

#endif
