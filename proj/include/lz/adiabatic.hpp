#ifndef LZ_ADIABATIC_HPP
#define LZ_ADIABATIC_HPP

#include <array>

#include "lz/core.hpp"

namespace lz::adiabatic {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Instantaneous eigensystem of the real symmetric two-level matrix with
/// entries (-eps tau, 1; 1, eps tau): eigenvalues +-theta with
/// theta = sqrt((eps tau)^2 + 1), eigenvector slopes v_+- = -eps tau +- theta
/// (computed cancellation-free via v_+ v_- = -1), unit-column basis change G
/// and its closed-form inverse.
struct Eigensystem {
    double tau;
    double theta;
    double v_plus;
    double v_minus;
    double n_plus;
    double n_minus;
    Matrix2 G;
    Matrix2 G_inv;
};

Eigensystem eigensystem(const Params& params, double tau);

/// Accumulated eigenphase chi(tau) = integral_{-tau0}^{tau} theta, using the
/// closed antiderivative (s/2) sqrt(eps^2 s^2 + 1) + asinh(eps s)/(2 eps).
double chi(const Params& params, double tau);

/// Frozen-basis propagation for early times: the two adiabatic coefficients
/// set at -tau0 evolve with phases e^{-+ i chi} and are rotated back with G
/// at tau.  Valid while G is effectively constant (tau <= -max(3/eps, 1)).
struct AdiabaticResult {
    AmplitudePair pair;
    bool in_window;
};
AdiabaticResult propagate_adiabatic(const Params& params, double tau);

/// Early-time closed form a = e^{-i eps (tau0^2 - tau^2)/2} e^{-Hbar} with
/// the log-phase-corrected exponent Hbar; reduces to the linearized-time
/// exponent up to O(1/tau0) corrections.
struct EarlyTimeClosedForm {
    cplx a;
    cplx h_bar;
    bool in_window;
};
EarlyTimeClosedForm a_early_time_closed_form(const Params& params, double tau);

/// Size (max-abs entry) of the neglected coupling G^{-1} dG/dtau, by
/// central finite differences; a diagnostic for the frozen-G window.
double frozen_g_coupling(const Params& params, double tau);

}  // namespace lz::adiabatic

#endif
