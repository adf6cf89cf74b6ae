#ifndef LZ_INTEGRATE_HPP
#define LZ_INTEGRATE_HPP

#include <limits>
#include <vector>

#include "lz/core.hpp"

namespace lz {

/// Tolerances, caps and the output grid for the propagators.  The grid must
/// lie inside [-tau0, tau0]; if empty, a uniform grid with output_points
/// samples is used.
struct SolverConfig {
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 2'000'000'000;
    std::size_t output_points = 201;
    std::vector<double> output_grid;
    double fixed_step = 0.0;  // testing hook: > 0 disables step adaptivity
};

/// Uniform grid over [-tau0, tau0] with n points (n >= 2).
std::vector<double> make_uniform_grid(const Params& params, std::size_t n);

/// Grid refined so consecutive samples never advance the quadratic phase
/// eps*tau^2/2 by more than pi/2 (local step <= pi/(2*eps*|tau|+2)); at
/// least n_target points.
std::vector<double> make_phase_resolved_grid(const Params& params, std::size_t n_target);

/// Validated-range guard: outside eps in [0.25, 100] solvers attach a
/// warning to their metadata.
bool epsilon_in_validated_range(double epsilon);

/// Riccati blow-up diagnosis: carries the first time where |eta| crossed
/// the guard cap.
class RiccatiBlowup : public NumericalError {
public:
    RiccatiBlowup(const std::string& msg, double tau_) : NumericalError(msg), tau(tau_) {}
    double tau;
};

/// Blow-up guard threshold: max(1e4, 100*sqrt(e^{pi/eps} - 1)).  Far above
/// any physical excursion of this initial-value family (|eta| = 1/|a| spikes
/// where the amplitude oscillation dips near zero), yet crossed almost
/// immediately by a genuine Riccati pole.
double riccati_guard_cap(double epsilon);

/// tau, eta, and three running integrals carried at solver order:
///   H           integral of eta                      (amplitude/phase source)
///   nonlinear   integral of eta^2 e^{i eps s^2}      (Markov-defect identity)
///   implicit    integral of e^{i eps s^2} e^{-H(s)}  (modulus identity)
struct RiccatiSample {
    double tau = 0.0;
    cplx eta{};
    cplx H{};
    cplx nonlinear{};
    cplx implicit{};
};

struct RiccatiSolution {
    Params params;
    double tau_start;  // -tau0 unless seeded
    std::vector<RiccatiSample> samples;
    std::vector<PhaseDecomposition> decomposition;
    SolverMeta meta;
};

/// (a, da/dtau) pairs from the decoupled second-order form.
struct SecondOrderSample {
    double tau = 0.0;
    cplx a{};
    cplx a_dot{};
};

struct SecondOrderTrajectory {
    Params params;
    std::vector<SecondOrderSample> samples;
    SolverMeta meta;
    /// b recovered through b = i*a_dot + eps*tau*a.
    Trajectory as_trajectory() const;
};

/// Propagates the coupled first-order system from (1, 0) at -tau0.
Trajectory solve_schroedinger(const Params& params, const SolverConfig& config = {});

/// Same dynamics with the quadratic phases moved into the couplings.
Trajectory solve_interaction(const Params& params, const SolverConfig& config = {});

/// Decoupled second-order equation for a, initial slope -i*eps*tau0.
SecondOrderTrajectory solve_second_order(const Params& params, const SolverConfig& config = {});

/// Riccati propagation from eta(-tau0) = 0 with the three running
/// integrals attached; throws RiccatiBlowup past the guard cap.
RiccatiSolution solve_riccati(const Params& params, const SolverConfig& config = {});

/// Riccati propagation from a caller-supplied start value and start time
/// inside [-tau0, tau0] (used for the "start at minus infinity" convention
/// where the seed is the leading 1/(2*i*eps*tau) tail).
RiccatiSolution solve_riccati_seeded(const Params& params, const SolverConfig& config,
                                     cplx eta_start, double tau_start);

}  // namespace lz

#endif
