#include "lz/core.hpp"

#include <cmath>
#include <numbers>

#include "lz/detail/ddouble.hpp"

namespace lz {

namespace {
constexpr double kPi = std::numbers::pi;
}

Params Params::from_periods(double epsilon_, long long t0_periods) {
    if (t0_periods <= 0)
        throw std::invalid_argument("Params::from_periods: period count must be positive");
    return Params(epsilon_, std::sqrt(2.0 * kPi * static_cast<double>(t0_periods) / epsilon_));
}

double Params::periods() const { return epsilon * tau0 * tau0 / (2.0 * kPi); }

std::string to_string(Picture p) {
    return p == Picture::schroedinger ? "schroedinger" : "interaction";
}

double normalization_defect(const AmplitudePair& pair) {
    return std::abs(std::norm(pair.a) + std::norm(pair.b) - 1.0);
}

AmplitudePair to_interaction(const AmplitudePair& pair, const Params& params) {
    if (pair.picture != Picture::schroedinger)
        throw ContractViolation("to_interaction: input must be in the Schroedinger picture");
    const cplx phase = detail::cis_prod(-0.5 * params.epsilon, pair.tau, pair.tau);
    return {pair.tau, phase * pair.a, std::conj(phase) * pair.b, Picture::interaction};
}

AmplitudePair to_schroedinger(const AmplitudePair& pair, const Params& params) {
    if (pair.picture != Picture::interaction)
        throw ContractViolation("to_schroedinger: input must be in the interaction picture");
    const cplx phase = detail::cis_prod(0.5 * params.epsilon, pair.tau, pair.tau);
    return {pair.tau, phase * pair.a, std::conj(phase) * pair.b, Picture::schroedinger};
}

void validate(const Trajectory& traj) {
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        if (traj.samples[i].picture != traj.picture)
            throw ContractViolation("Trajectory: sample picture tag disagrees with trajectory");
        if (i > 0 && !(traj.samples[i - 1].tau < traj.samples[i].tau))
            throw ContractViolation("Trajectory: sample times must be strictly increasing");
    }
}

double max_normalization_defect(const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.samples) worst = std::max(worst, normalization_defect(s));
    return worst;
}

std::vector<double> unwrap_phase(std::span<const cplx> samples, double initial_phase) {
    if (samples.empty())
        throw std::invalid_argument("unwrap_phase: empty input");
    std::vector<double> out(samples.size());
    out[0] = initial_phase;
    double prev_arg = samples[0] == cplx{0.0, 0.0} ? wrap_to_pi(initial_phase)
                                                   : std::arg(samples[0]);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i] == cplx{0.0, 0.0}) {
            out[i] = out[i - 1];
            continue;
        }
        const double cur = std::arg(samples[i]);
        out[i] = out[i - 1] + wrap_to_pi(cur - prev_arg);
        prev_arg = cur;
    }
    return out;
}

double wrap_to_pi(double x) {
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi) r = kPi;  // remainder lands in [-pi, pi]; fold the closed end
    return r;
}

double circular_distance(double x, double y) { return std::abs(wrap_to_pi(x - y)); }

}  // namespace lz
