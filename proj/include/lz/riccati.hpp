#ifndef LZ_RICCATI_HPP
#define LZ_RICCATI_HPP

#include <vector>

#include "lz/core.hpp"
#include "lz/integrate.hpp"

namespace lz::riccati {

/// Rebuilds the amplitude pair from a Riccati solution:
/// a = e^{-i eps (tau_start^2 - tau^2)/2} e^{-H}, b = -i eta a.
/// Normalization is not enforced; its defect measures solve quality.
Trajectory reconstruct_amplitudes(const RiccatiSolution& sol);

/// |eta| = sqrt(1 - A^2)/A for A in (0, 1].
double eta_modulus_from_A(double A);

/// Defects of the quadrature identity |I(tau)| = sqrt(1 - A(tau)^2) and of
/// the phase prescription phi_eta = -lambda + arg I, measured over the
/// solution grid.  Samples closer than start_exclusion to the start (where
/// the phase of a vanishing eta is undefined) are skipped for the phase
/// defect; samples with A > 1 - 1e-6 are skipped as well.
struct ImplicitIdentityReport {
    double max_modulus_defect = 0.0;
    double max_phase_defect = 0.0;
};
ImplicitIdentityReport implicit_identity_check(const RiccatiSolution& sol,
                                               double start_exclusion = 0.1);

/// lambda(tau) = eps tau^2 - Im H(tau) for one sample.
double lambda_of(const RiccatiSolution& sol, std::size_t i);

/// Iterated solution from the nonlinear integral form with the Markov
/// kernel in the inner exponent; evaluated on the given ascending grid.
/// Satisfies d/dtau eta_I = -2 i eps tau eta_I + 1 + eta_I eta_M.
std::vector<cplx> eta_iterated_exponential(const Params& params,
                                           const std::vector<double>& grid);

/// Additive iterate eta_M + e^{-i eps tau^2} Integral(eta_M^2 e^{i eps s^2}).
cplx eta_iterated_additive(const Params& params, double tau);

/// Large-time simplification dropping the decaying mirror term; uses the
/// connection formula internally.  Valid for tau >= 3/eps.
struct SimplifiedIterate {
    cplx value;
    bool in_validity_region;
};
SimplifiedIterate eta_iterated_additive_simplified(const Params& params, double tau);

/// Closed-form large-negative-time expansion (start-at-minus-infinity
/// convention): 1/(2 i eps tau) - 1/(4 eps^2 tau^3) - 1/(8 i eps^3 tau^3),
/// exposed with its real and imaginary parts.  Valid for eps*|tau| >= 3.
struct LargeNegativeEta {
    cplx value;
    double real_part;
    double imag_part;
    bool in_validity_region;
};
LargeNegativeEta eta_large_negative(const Params& params, double tau);

/// Taylor coefficients of eta at tau = 0 from derivatives of the Riccati
/// equation: first = 1 + eta0^2, second = 2 eta0 (1 + eta0^2 - i eps).
struct ExactTaylor {
    cplx first;
    cplx second;
};
ExactTaylor eta_taylor0_exact(cplx eta0, const Params& params);

/// Per-sample residual of the defect identity
/// eta - eta_M - e^{-i eps tau^2} Integral(eta^2 e^{i eps s^2});
/// the integral is the solver-order quadrature carried by the solution.
std::vector<double> markov_defect(const RiccatiSolution& sol);

}  // namespace lz::riccati

#endif
