#ifndef LZ_EXACT_HPP
#define LZ_EXACT_HPP

#include "lz/core.hpp"
#include "lz/specfun.hpp"

namespace lz::exact {

/// Complex scaling z = sqrt(2 eps) tau e^{i pi/4}.  Negative times land on
/// the principal argument -3 pi/4, which is the branch the closed-form
/// asymptotics require.
cplx scale_z(const Params& params, double tau);

/// Coefficients of the two independent cylinder solutions matched to
/// initial data at z = -z0.
struct CylinderCoefficients {
    cplx a_plus;
    cplx a_minus;
    cplx determinant;
    Params params;
};

/// General matching: a(-z0) = a0, (d/dz a)(-z0) = a0_slope.  Throws
/// NumericalError if the solution pair degenerates.
CylinderCoefficients coefficients_general(cplx a0, cplx a0_slope, const Params& params);

/// Specialization to the propagation initial data (a0, slope) = (1, -z0/2),
/// where the coefficients reduce to D_{nu+1}(+-z0)/M.
CylinderCoefficients coefficients_propagation_initial_data(const Params& params);

/// Amplitudes from a general coefficient pair at time tau.
struct GeneralAmplitudes {
    cplx a;
    cplx b;
};
GeneralAmplitudes general_amplitudes(const CylinderCoefficients& coeffs, double tau);

/// All three closed-form quantities at one time, evaluated in log form so
/// intermediate exponentials cannot overflow.  degraded propagates the
/// cylinder evaluator's crossover flag; near_node marks severe cancellation
/// in the numerator of a (an amplitude node).
struct ExactAmplitudes {
    double tau;
    cplx a;
    cplx b;
    cplx eta;
    bool degraded = false;
    bool near_node = false;
};
ExactAmplitudes exact_amplitudes(const Params& params, double tau);

cplx amplitude_a_exact(const Params& params, double tau);
cplx amplitude_b_exact(const Params& params, double tau);
cplx eta_exact(const Params& params, double tau);

/// Final-state scalars in the tau0 -> infinity limit.
double asymptotic_a_modulus(double epsilon);                 // e^{-pi/(2 eps)}
double asymptotic_b_modulus(double epsilon);                 // sqrt(1 - e^{-pi/eps})
double asymptotic_eta_modulus(double epsilon);               // sqrt(e^{pi/eps} - 1)

/// Asymptotic phase of b at tau0, folded into (-pi, pi]:
/// -pi/4 - eps tau0^2 - ln(sqrt(2 eps) tau0)/eps + arg Gamma(1 + i/(2 eps)).
double asymptotic_b_phase(const Params& params);

/// Asymptotic phase of eta: asymptotic_b_phase + pi/2 (from b = -i eta a
/// with the survival amplitude real positive in the limit).
double asymptotic_eta_phase(const Params& params);

}  // namespace lz::exact

#endif
