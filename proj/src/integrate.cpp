#include "lz/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lz/detail/ddouble.hpp"
#include "lz/detail/dopri5.hpp"

namespace lz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEtaTinyPhase = 1e-8;  // below this |eta| the phase is held

void validate_config(const Params& params, const SolverConfig& config) {
    if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0))
        throw std::invalid_argument("SolverConfig: tolerances must be positive");
    if (!(config.max_step > 0.0))
        throw std::invalid_argument("SolverConfig: max_step must be positive");
    if (config.output_grid.empty() && config.output_points < 2)
        throw std::invalid_argument("SolverConfig: need at least two output points");
    for (std::size_t i = 0; i < config.output_grid.size(); ++i) {
        const double g = config.output_grid[i];
        if (g < -params.tau0 - 1e-12 || g > params.tau0 + 1e-12)
            throw std::invalid_argument("SolverConfig: output grid point outside [-tau0, tau0]");
        if (i > 0 && !(config.output_grid[i - 1] < g))
            throw std::invalid_argument("SolverConfig: output grid must be strictly increasing");
    }
}

std::vector<double> resolve_grid(const Params& params, const SolverConfig& config) {
    if (!config.output_grid.empty()) return config.output_grid;
    return make_uniform_grid(params, config.output_points);
}

SolverMeta base_meta(const Params& params, const SolverConfig& config) {
    SolverMeta meta;
    meta.rel_tol = config.rel_tol;
    meta.abs_tol = config.abs_tol;
    if (!epsilon_in_validated_range(params.epsilon))
        meta.warnings.push_back("epsilon outside the validated range [0.25, 100]");
    return meta;
}

detail::Dopri5Options dopri_options(const Params& params, const SolverConfig& config) {
    detail::Dopri5Options opt;
    opt.rel_tol = config.rel_tol;
    opt.abs_tol = config.abs_tol;
    opt.max_steps = config.max_steps;
    opt.fixed_step = config.fixed_step;
    const double eps = params.epsilon;
    const double user_cap = config.max_step;
    opt.max_step_at = [eps, user_cap](double t) {
        return std::min(user_cap, kPi / (4.0 * (eps * std::abs(t) + 1.0)));
    };
    return opt;
}

// Walks the output grid while the integrator streams dense segments.
template <std::size_t N, typename Emit>
class GridSampler {
public:
    GridSampler(std::vector<double> grid, Emit emit) : grid_(std::move(grid)), emit_(emit) {}

    void start(double t0, const detail::State<N>& y0) {
        while (next_ < grid_.size() && grid_[next_] <= t0) {
            emit_(grid_[next_], y0);
            ++next_;
        }
    }

    void operator()(double t_old, double t_new, const detail::DenseSegment<N>& seg) {
        (void)t_old;
        while (next_ < grid_.size() && grid_[next_] <= t_new + 1e-300) {
            emit_(grid_[next_], seg.eval(std::min(grid_[next_], t_new)));
            ++next_;
        }
    }

    bool done() const { return next_ == grid_.size(); }

private:
    std::vector<double> grid_;
    Emit emit_;
    std::size_t next_ = 0;
};

}  // namespace

std::vector<double> make_uniform_grid(const Params& params, std::size_t n) {
    if (n < 2) throw std::invalid_argument("make_uniform_grid: need n >= 2");
    std::vector<double> grid(n);
    const double step = 2.0 * params.tau0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = -params.tau0 + step * static_cast<double>(i);
    grid.front() = -params.tau0;
    grid.back() = params.tau0;
    return grid;
}

std::vector<double> make_phase_resolved_grid(const Params& params, std::size_t n_target) {
    const auto base = make_uniform_grid(params, std::max<std::size_t>(n_target, 2));
    std::vector<double> grid;
    grid.reserve(base.size() * 2);
    grid.push_back(base.front());
    for (std::size_t i = 1; i < base.size(); ++i) {
        const double left = base[i - 1];
        const double right = base[i];
        const double worst = std::max(std::abs(left), std::abs(right));
        const double cap = kPi / (2.0 * params.epsilon * worst + 2.0);
        const auto pieces =
            static_cast<std::size_t>(std::ceil((right - left) / cap));
        for (std::size_t j = 1; j < pieces; ++j)
            grid.push_back(left + (right - left) * static_cast<double>(j) /
                                      static_cast<double>(pieces));
        grid.push_back(right);
    }
    return grid;
}

bool epsilon_in_validated_range(double epsilon) {
    return epsilon >= 0.25 && epsilon <= 100.0;
}

double riccati_guard_cap(double epsilon) {
    // |eta| = sqrt(1-|a|^2)/|a| spikes wherever the post-crossing amplitude
    // oscillation carries |a| close to zero (|a| dips to 6e-3 at eps=1,
    // tau0=5), so the cap sits far above the asymptotic modulus; a genuine
    // moving pole still crosses it almost immediately.
    return std::max(1e4, 100.0 * std::sqrt(std::expm1(kPi / epsilon)));
}

Trajectory solve_schroedinger(const Params& params, const SolverConfig& config) {
    validate_config(params, config);
    Trajectory traj{params, Picture::schroedinger, {}, base_meta(params, config)};
    const double eps = params.epsilon;

    auto rhs = [eps](double t, const detail::State<2>& y, detail::State<2>& dydt) {
        const cplx i{0.0, 1.0};
        dydt[0] = i * eps * t * y[0] - i * y[1];
        dydt[1] = -i * y[0] - i * eps * t * y[1];
    };

    auto emit = [&](double tau, const detail::State<2>& y) {
        traj.samples.push_back({tau, y[0], y[1], Picture::schroedinger});
    };
    GridSampler<2, decltype(emit)> sampler(resolve_grid(params, config), emit);

    detail::State<2> y{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    sampler.start(-params.tau0, y);
    const auto stats = detail::integrate_dopri5<2>(rhs, y, -params.tau0, params.tau0,
                                                   dopri_options(params, config), sampler);
    traj.meta.n_steps = stats.n_steps;
    traj.meta.n_rejected = stats.n_rejected;
    traj.meta.n_rhs_evals = stats.n_rhs_evals;
    return traj;
}

Trajectory solve_interaction(const Params& params, const SolverConfig& config) {
    validate_config(params, config);
    Trajectory traj{params, Picture::interaction, {}, base_meta(params, config)};
    const double eps = params.epsilon;

    auto rhs = [eps](double t, const detail::State<2>& y, detail::State<2>& dydt) {
        const cplx i{0.0, 1.0};
        const cplx chirp_down = detail::cis_prod(-eps, t, t);  // e^{-i eps t^2}
        dydt[0] = -i * chirp_down * y[1];
        dydt[1] = -i * std::conj(chirp_down) * y[0];
    };

    auto emit = [&](double tau, const detail::State<2>& y) {
        traj.samples.push_back({tau, y[0], y[1], Picture::interaction});
    };
    GridSampler<2, decltype(emit)> sampler(resolve_grid(params, config), emit);

    detail::State<2> y{detail::cis_prod(-0.5 * eps, params.tau0, params.tau0), cplx{0.0, 0.0}};
    sampler.start(-params.tau0, y);
    const auto stats = detail::integrate_dopri5<2>(rhs, y, -params.tau0, params.tau0,
                                                   dopri_options(params, config), sampler);
    traj.meta.n_steps = stats.n_steps;
    traj.meta.n_rejected = stats.n_rejected;
    traj.meta.n_rhs_evals = stats.n_rhs_evals;
    return traj;
}

Trajectory SecondOrderTrajectory::as_trajectory() const {
    Trajectory traj{params, Picture::schroedinger, {}, meta};
    traj.samples.reserve(samples.size());
    const cplx i{0.0, 1.0};
    for (const auto& s : samples)
        traj.samples.push_back(
            {s.tau, s.a, i * s.a_dot + params.epsilon * s.tau * s.a, Picture::schroedinger});
    return traj;
}

SecondOrderTrajectory solve_second_order(const Params& params, const SolverConfig& config) {
    validate_config(params, config);
    SecondOrderTrajectory traj{params, {}, base_meta(params, config)};
    const double eps = params.epsilon;

    auto rhs = [eps](double t, const detail::State<2>& y, detail::State<2>& dydt) {
        dydt[0] = y[1];
        dydt[1] = -(cplx{eps * eps * t * t + 1.0, -eps}) * y[0];
    };

    auto emit = [&](double tau, const detail::State<2>& y) {
        traj.samples.push_back({tau, y[0], y[1]});
    };
    GridSampler<2, decltype(emit)> sampler(resolve_grid(params, config), emit);

    detail::State<2> y{cplx{1.0, 0.0}, cplx{0.0, -eps * params.tau0}};
    sampler.start(-params.tau0, y);
    const auto stats = detail::integrate_dopri5<2>(rhs, y, -params.tau0, params.tau0,
                                                   dopri_options(params, config), sampler);
    traj.meta.n_steps = stats.n_steps;
    traj.meta.n_rejected = stats.n_rejected;
    traj.meta.n_rhs_evals = stats.n_rhs_evals;
    return traj;
}

namespace {

// Shared implementation for both Riccati entry points.  State layout:
// [eta, H, integral of eta^2 e^{i eps s^2}, integral of e^{i eps s^2} e^{-H}].
RiccatiSolution solve_riccati_impl(const Params& params, const SolverConfig& config,
                                   cplx eta_start, double tau_start) {
    validate_config(params, config);
    if (tau_start < -params.tau0 - 1e-12 || tau_start >= params.tau0)
        throw std::invalid_argument("solve_riccati: start time outside [-tau0, tau0)");

    RiccatiSolution sol{params, tau_start, {}, {}, base_meta(params, config)};
    const double eps = params.epsilon;
    const double cap = riccati_guard_cap(eps);

    auto rhs = [eps](double t, const detail::State<4>& y, detail::State<4>& dydt) {
        const cplx i{0.0, 1.0};
        const cplx eta = y[0];
        const cplx chirp_up = detail::cis_prod(eps, t, t);  // e^{+i eps t^2}
        dydt[0] = eta * eta - 2.0 * i * eps * t * eta + 1.0;
        dydt[1] = eta;
        dydt[2] = eta * eta * chirp_up;
        dydt[3] = chirp_up * std::exp(-y[1]);
    };

    // phase unwrap state, anchored on step ends and emitted samples
    double unwrapped = std::abs(eta_start) < kEtaTinyPhase ? kPi / 2.0 : std::arg(eta_start);
    double prev_arg = wrap_to_pi(unwrapped);
    auto advance_phase = [&](const cplx& eta) {
        if (std::abs(eta) < kEtaTinyPhase) return unwrapped;
        const double cur = std::arg(eta);
        unwrapped += wrap_to_pi(cur - prev_arg);
        prev_arg = cur;
        return unwrapped;
    };

    auto emit = [&](double tau, const detail::State<4>& y) {
        RiccatiSample s{tau, y[0], y[1], y[2], y[3]};
        PhaseDecomposition d;
        d.tau = tau;
        d.A = std::exp(-s.H.real());
        d.gamma = -s.H.imag();
        d.varphi = -0.5 * eps * (tau_start * tau_start - tau * tau) + d.gamma;
        d.phi_eta = advance_phase(s.eta);
        d.psi = d.phi_eta - kPi / 2.0;
        sol.samples.push_back(s);
        sol.decomposition.push_back(d);
    };

    auto grid = resolve_grid(params, config);
    std::erase_if(grid, [&](double g) { return g < tau_start - 1e-12; });
    GridSampler<4, decltype(emit)> sampler(grid, emit);

    auto observer = [&](double t_old, double t_new, const detail::DenseSegment<4>& seg) {
        sampler(t_old, t_new, seg);
        const auto y_end = seg.eval(t_new);
        advance_phase(y_end[0]);
        if (std::abs(y_end[0]) > cap) {
            // locate the first dense sample past the cap for the diagnosis
            double tau_bad = t_new;
            for (int j = 1; j <= 16; ++j) {
                const double t = t_old + (t_new - t_old) * j / 16.0;
                if (std::abs(seg.eval(t)[0]) > cap) {
                    tau_bad = t;
                    break;
                }
            }
            throw RiccatiBlowup("solve_riccati: |eta| exceeded the blow-up guard near tau = " +
                                    std::to_string(tau_bad),
                                tau_bad);
        }
    };

    detail::State<4> y{eta_start, cplx{}, cplx{}, cplx{}};
    sampler.start(tau_start, y);
    const auto stats = detail::integrate_dopri5<4>(rhs, y, tau_start, params.tau0,
                                                   dopri_options(params, config), observer);
    sol.meta.n_steps = stats.n_steps;
    sol.meta.n_rejected = stats.n_rejected;
    sol.meta.n_rhs_evals = stats.n_rhs_evals;
    return sol;
}

}  // namespace

RiccatiSolution solve_riccati(const Params& params, const SolverConfig& config) {
    return solve_riccati_impl(params, config, cplx{0.0, 0.0}, -params.tau0);
}

RiccatiSolution solve_riccati_seeded(const Params& params, const SolverConfig& config,
                                     cplx eta_start, double tau_start) {
    return solve_riccati_impl(params, config, eta_start, tau_start);
}

}  // namespace lz
