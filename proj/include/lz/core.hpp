#ifndef LZ_CORE_HPP
#define LZ_CORE_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lz {

using cplx = std::complex<double>;

/// Thrown when an operation is called with arguments that violate its
/// contract (e.g. a picture transform applied to the wrong picture).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Thrown when a numerical procedure fails (blow-up, non-convergence,
/// step-count exhaustion).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The dimensionless parameter pair that fixes every computation:
/// epsilon is the ratio of the detuning sweep rate to the squared coupling,
/// tau0 the magnitude of the (negative) start time.  Propagation runs over
/// [-tau0, tau0].
struct Params {
    double epsilon;
    double tau0;

    Params(double epsilon_, double tau0_) : epsilon(epsilon_), tau0(tau0_) {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon))
            throw std::invalid_argument("Params: epsilon must be positive and finite");
        if (!(tau0 > 0.0) || !std::isfinite(tau0))
            throw std::invalid_argument("Params: tau0 must be positive and finite");
    }

    /// Alternative constructor fixing tau0 so that epsilon*tau0^2 spans an
    /// integer number T0 of 2*pi phase periods: tau0 = sqrt(2*pi*T0/epsilon).
    static Params from_periods(double epsilon_, long long t0_periods);

    /// Inverse of from_periods: epsilon*tau0^2/(2*pi).
    double periods() const;
};

enum class Picture { schroedinger, interaction };

std::string to_string(Picture p);

/// Normalized two-level state at a single time, tagged with the frame the
/// amplitudes are expressed in.
struct AmplitudePair {
    double tau = 0.0;
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    Picture picture = Picture::schroedinger;
};

/// | |a|^2 + |b|^2 - 1 |
double normalization_defect(const AmplitudePair& pair);

/// Frame change multiplying a by exp(-i*eps*tau^2/2) and b by the conjugate
/// phase.  Moduli are preserved.  Requires a Schroedinger-picture input.
AmplitudePair to_interaction(const AmplitudePair& pair, const Params& params);

/// Exact inverse of to_interaction.  Requires an interaction-picture input.
AmplitudePair to_schroedinger(const AmplitudePair& pair, const Params& params);

/// Amplitude/phase split of the Riccati description at one time:
///   A       modulus of the survival amplitude,
///   varphi  common phase shared by both amplitudes,
///   phi_eta continuous (unwrapped) argument of eta,
///   psi     relative phase phi_eta - pi/2,
///   gamma   negative running integral of Im(eta).
struct PhaseDecomposition {
    double tau = 0.0;
    double A = 1.0;
    double varphi = 0.0;
    double phi_eta = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
};

struct SolverMeta {
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    std::size_t n_steps = 0;
    std::size_t n_rejected = 0;
    std::size_t n_rhs_evals = 0;
    std::vector<std::string> warnings;
};

/// Time-ordered propagation record.  Samples have strictly increasing tau
/// and all carry the same picture tag.
struct Trajectory {
    Params params;
    Picture picture = Picture::schroedinger;
    std::vector<AmplitudePair> samples;
    SolverMeta meta;
};

/// Throws if sample times are not strictly increasing or pictures disagree.
void validate(const Trajectory& traj);

/// Largest normalization defect over all samples.
double max_normalization_defect(const Trajectory& traj);

/// Reconstructs a continuous phase from complex samples.  The first output
/// equals initial_phase; every increment is the principal-value difference
/// of consecutive arguments, folded into (-pi, pi].  Zero samples carry the
/// running phase forward unchanged.  Caller guarantees sampling dense enough
/// that true increments stay below pi.
std::vector<double> unwrap_phase(std::span<const cplx> samples, double initial_phase);

/// Folds x into (-pi, pi].
double wrap_to_pi(double x);

/// |wrap_to_pi(x - y)|
double circular_distance(double x, double y);

}  // namespace lz

#endif
