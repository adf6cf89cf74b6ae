#include "lz/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lz/acceptance.hpp"
#include "lz/dataset.hpp"
#include "lz/detail/ddouble.hpp"
#include "lz/exact.hpp"
#include "lz/integrate.hpp"
#include "lz/markov.hpp"
#include "lz/parallel.hpp"
#include "lz/riccati.hpp"
#include "lz/specfun.hpp"

namespace lz::cli {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitChecksFailed = 3;

struct CommonOpts {
    double epsilon = 4.0;
    std::optional<double> tau0;
    std::optional<long long> t0_periods;
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
    std::optional<long long> grid;  // unset: 201 (simulate/compare), auto (figures)
    std::string format = "csv";
    std::string picture = "schroedinger";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_picture) {
    // take-last lets explicit flags override values injected from a config
    // file (which always land first on the argument list)
    auto last = [](CLI::Option* o) { o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
    last(cmd->add_option("--epsilon", opts.epsilon,
                         "chirp-to-coupling ratio (dimensionless)"));
    auto* t = cmd->add_option("--tau0", opts.tau0, "start-time magnitude");
    auto* n = cmd->add_option("--t0-periods", opts.t0_periods,
                              "integer phase-period count fixing tau0 = sqrt(2 pi T0/eps)");
    last(t);
    last(n);
    t->excludes(n);
    last(cmd->add_option("--rel-tol", opts.rel_tol, "solver relative tolerance"));
    last(cmd->add_option("--abs-tol", opts.abs_tol, "solver absolute tolerance"));
    last(cmd->add_option("--grid", opts.grid, "output grid points"));
    last(cmd->add_option("--format", opts.format, "csv or json")
             ->check(CLI::IsMember({"csv", "json"})));
    if (with_picture)
        last(cmd->add_option("--picture", opts.picture, "schroedinger or interaction")
                 ->check(CLI::IsMember({"schroedinger", "interaction"})));
}

// Expands "--config FILE" into the key=value pairs of FILE, injected right
// after the subcommand token so later explicit flags take precedence.
std::vector<std::string> expand_config(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw CLI::ValidationError("--config needs a file path");
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (config_path.empty()) return args;
    if (args.empty()) throw CLI::ValidationError("--config requires a subcommand");
    std::ifstream in(config_path);
    if (!in) throw CLI::ValidationError("cannot open config file " + config_path);
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#' || line[start] == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config line is not key=value: " + line);
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        injected.push_back("--" + strip(line.substr(0, eq)));
        injected.push_back(strip(line.substr(eq + 1)));
    }
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    return args;
}

Params resolve_params(const CommonOpts& opts, std::optional<double> default_tau0,
                      bool require_one) {
    if (opts.tau0 && opts.t0_periods)
        throw CLI::ValidationError("supply only one of --tau0 / --t0-periods");
    if (opts.tau0) return Params(opts.epsilon, *opts.tau0);
    if (opts.t0_periods) return Params::from_periods(opts.epsilon, *opts.t0_periods);
    if (require_one)
        throw CLI::ValidationError("one of --tau0 / --t0-periods is required");
    return Params(opts.epsilon, default_tau0.value_or(858.0855));
}

SolverConfig solver_config(const CommonOpts& opts, const Params& params,
                           bool auto_grid_default = false) {
    SolverConfig cfg;
    cfg.rel_tol = opts.rel_tol;
    cfg.abs_tol = opts.abs_tol;
    if (opts.grid) {
        if (*opts.grid < 2)
            throw CLI::ValidationError("empty grid request: --grid needs at least 2 points");
        cfg.output_points = static_cast<std::size_t>(*opts.grid);
    } else if (auto_grid_default) {
        // dense enough that the quadratic phase advances < pi/2 per sample
        cfg.output_grid = make_phase_resolved_grid(params, 4001);
    }
    return cfg;
}

dataset::Format format_of(const CommonOpts& opts) {
    return opts.format == "json" ? dataset::Format::json : dataset::Format::csv;
}

dataset::Metadata base_metadata(const std::string& command, const CommonOpts& opts,
                                const Params& params) {
    dataset::Metadata meta;
    meta.add("command", command);
    meta.add("epsilon", dataset::format_double(params.epsilon));
    meta.add("tau0", dataset::format_double(params.tau0));
    if (opts.t0_periods) meta.add("t0_periods", std::to_string(*opts.t0_periods));
    meta.add("rel_tol", dataset::format_double(opts.rel_tol));
    meta.add("abs_tol", dataset::format_double(opts.abs_tol));
    meta.add("build", dataset::build_version());
    return meta;
}

// ------------------------------------------------------------------ simulate

int cmd_simulate(const CommonOpts& opts, const std::string& out,
                 const std::string& representation) {
    const Params params = resolve_params(opts, std::nullopt, true);
    const SolverConfig cfg = solver_config(opts, params);

    dataset::Metadata meta = base_metadata("simulate", opts, params);
    meta.add("picture", opts.picture);
    meta.add("representation", representation);
    meta.add("grid_points",
             std::to_string(cfg.output_grid.empty() ? cfg.output_points
                                                    : cfg.output_grid.size()));

    dataset::ColumnSet data;
    if (representation == "riccati") {
        const auto sol = solve_riccati(params, cfg);
        Trajectory traj = riccati::reconstruct_amplitudes(sol);
        if (opts.picture == "interaction") {
            for (auto& s : traj.samples) s = to_interaction(s, params);
            traj.picture = Picture::interaction;
        }
        data = dataset::trajectory_columns(traj);
        const auto extra = dataset::riccati_columns(sol);
        for (std::size_t c = 1; c < extra.names.size(); ++c)  // skip duplicate tau
            data.add(extra.names[c], extra.columns[c]);
    } else {
        const auto traj = opts.picture == "interaction" ? solve_interaction(params, cfg)
                                                        : solve_schroedinger(params, cfg);
        data = dataset::trajectory_columns(traj);
    }
    write_dataset(out, format_of(opts), meta, data);
    std::cout << out << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------- figures

std::vector<double> window_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

void write_complex_curve(const fs::path& path, dataset::Format fmt,
                         const dataset::Metadata& meta, const std::string& name,
                         const std::vector<double>& tau, const std::vector<cplx>& values) {
    dataset::ColumnSet data;
    std::vector<double> re(values.size()), im(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        re[i] = values[i].real();
        im[i] = values[i].imag();
    }
    data.add("tau", tau);
    data.add("re_" + name, std::move(re));
    data.add("im_" + name, std::move(im));
    write_dataset(path, fmt, meta, data);
    std::cout << path.string() << "\n";
}

std::string tau0_token(double tau0) {
    std::string token = dataset::format_double(tau0);
    for (auto& ch : token)
        if (ch == '.') ch = 'p';
    return token;
}

int cmd_figures(const CommonOpts& opts_in, int figure, const std::string& out_dir) {
    CommonOpts opts = opts_in;
    const fs::path dir(out_dir);
    const auto fmt = format_of(opts);
    const std::string ext = opts.format == "json" ? ".json" : ".csv";

    auto meta_for = [&](const Params& params, const std::string& curve) {
        dataset::Metadata meta = base_metadata("figures", opts, params);
        meta.add("figure", std::to_string(figure));
        meta.add("curve", curve);
        return meta;
    };

    switch (figure) {
        case 1: {
            const Params params = resolve_params(opts, 858.0855, false);
            const auto sol = solve_riccati(params, solver_config(opts, params, true));
            auto data = dataset::riccati_columns(sol);
            std::vector<double> b_abs(sol.samples.size());
            for (std::size_t i = 0; i < b_abs.size(); ++i) {
                const double A = sol.decomposition[i].A;
                b_abs[i] = std::sqrt(std::max(0.0, 1.0 - A * A));
            }
            data.add("abs_b", std::move(b_abs));
            write_dataset(dir / ("fig1_riccati_decomposition" + ext), fmt,
                          meta_for(params, "riccati_decomposition"), data);
            std::cout << (dir / ("fig1_riccati_decomposition" + ext)).string() << "\n";
            return kExitOk;
        }
        case 3: {
            const Params params = resolve_params(opts, 858.0855, false);
            const auto sol = solve_riccati(params, solver_config(opts, params, true));
            dataset::ColumnSet data;
            std::vector<double> tau(sol.samples.size());
            for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = sol.samples[i].tau;
            const auto eta_m = parallel::eta_markov_grid(params, tau);
            std::vector<double> re(tau.size()), im(tau.size()), rem(tau.size()),
                imm(tau.size());
            for (std::size_t i = 0; i < tau.size(); ++i) {
                re[i] = sol.samples[i].eta.real();
                im[i] = sol.samples[i].eta.imag();
                rem[i] = eta_m[i].real();
                imm[i] = eta_m[i].imag();
            }
            data.add("tau", std::move(tau));
            data.add("re_eta", std::move(re));
            data.add("im_eta", std::move(im));
            data.add("re_eta_lin", std::move(rem));
            data.add("im_eta_lin", std::move(imm));
            write_dataset(dir / ("fig3_eta_vs_linearized" + ext), fmt,
                          meta_for(params, "eta_vs_linearized"), data);
            std::cout << (dir / ("fig3_eta_vs_linearized" + ext)).string() << "\n";
            return kExitOk;
        }
        case 5:
        case 6: {
            const Params params = resolve_params(opts, 858.0855, false);
            const auto traj =
                figure == 5 ? solve_schroedinger(params, solver_config(opts, params, true))
                            : solve_interaction(params, solver_config(opts, params, true));
            std::vector<double> tau(traj.samples.size());
            std::vector<cplx> a(traj.samples.size()), b(traj.samples.size());
            for (std::size_t i = 0; i < tau.size(); ++i) {
                tau[i] = traj.samples[i].tau;
                a[i] = traj.samples[i].a;
                b[i] = traj.samples[i].b;
            }
            const std::string stem = "fig" + std::to_string(figure);
            write_complex_curve(dir / (stem + "_a" + ext), fmt, meta_for(params, "a"), "a",
                                tau, a);
            write_complex_curve(dir / (stem + "_b" + ext), fmt, meta_for(params, "b"), "b",
                                tau, b);
            return kExitOk;
        }
        case 7: {
            const Params params = resolve_params(opts, 858.0855, false);
            const auto sol = solve_riccati(params, solver_config(opts, params, true));
            std::vector<double> tau(sol.samples.size());
            std::vector<cplx> eta(sol.samples.size());
            for (std::size_t i = 0; i < tau.size(); ++i) {
                tau[i] = sol.samples[i].tau;
                eta[i] = sol.samples[i].eta;
            }
            write_complex_curve(dir / ("fig7_eta" + ext), fmt, meta_for(params, "eta"), "eta",
                                tau, eta);
            return kExitOk;
        }
        case 8: {
            std::vector<double> tau0s{8.581, 27.135, 54.270};
            if (opts.tau0 || opts.t0_periods)
                tau0s = {resolve_params(opts, std::nullopt, true).tau0};
            // independent curves, one solve each
            parallel::for_each_index(tau0s.size(), tau0s.size() > 1, [&](std::size_t i) {
                const Params params(opts.epsilon, tau0s[i]);
                const auto traj =
                    solve_schroedinger(params, solver_config(opts, params, true));
                std::vector<double> tau(traj.samples.size());
                std::vector<cplx> a(traj.samples.size());
                for (std::size_t k = 0; k < tau.size(); ++k) {
                    tau[k] = traj.samples[k].tau;
                    a[k] = traj.samples[k].a;
                }
                write_complex_curve(
                    dir / ("fig8_a_tau0_" + tau0_token(tau0s[i]) + ext), fmt,
                    meta_for(params, "a_tau0_" + dataset::format_double(tau0s[i])), "a", tau,
                    a);
            });
            return kExitOk;
        }
        case 9: {
            std::vector<double> tau0s{5.0, 10.0, 20.0};
            if (opts.tau0 || opts.t0_periods)
                tau0s = {resolve_params(opts, std::nullopt, true).tau0};
            for (const double tau0 : tau0s) {
                const Params params(opts.epsilon, tau0);
                SolverConfig cfg = solver_config(opts, params);
                const double hi = -std::max(3.0 / params.epsilon, 1.0);
                const std::size_t n =
                    cfg.output_grid.empty() ? cfg.output_points : cfg.output_grid.size();
                cfg.output_grid = window_grid(-tau0, hi, std::max<std::size_t>(n, 64));
                const auto sol = solve_riccati(params, cfg);
                dataset::ColumnSet data;
                const std::size_t m = sol.samples.size();
                std::vector<double> tau(m), re(m), im(m), rem(m), imm(m), center(m), env(m);
                for (std::size_t i = 0; i < m; ++i) {
                    tau[i] = sol.samples[i].tau;
                    re[i] = sol.samples[i].eta.real();
                    im[i] = sol.samples[i].eta.imag();
                    const cplx lin = markov::eta_markov(params, tau[i]);
                    rem[i] = lin.real();
                    imm[i] = lin.imag();
                    center[i] = 1.0 / (2.0 * params.epsilon * std::abs(tau[i]));
                    env[i] = 1.0 / (2.0 * params.epsilon * tau0);
                }
                data.add("tau", std::move(tau));
                data.add("re_eta", std::move(re));
                data.add("im_eta", std::move(im));
                data.add("re_eta_lin", std::move(rem));
                data.add("im_eta_lin", std::move(imm));
                data.add("im_center", std::move(center));
                data.add("envelope_amplitude", std::move(env));
                const fs::path path =
                    dir / ("fig9_eta_tau0_" + tau0_token(tau0) + ext);
                write_dataset(path, fmt, meta_for(params, "eta_tau0_" + tau0_token(tau0)),
                              data);
                std::cout << path.string() << "\n";
            }
            return kExitOk;
        }
        case 10:
        case 11: {
            const Params params = resolve_params(opts, 10.0, false);
            const double eps = params.epsilon;
            const double edge = std::max(3.0 / eps, 0.75);
            SolverConfig cfg = solver_config(opts, params);
            const std::size_t n =
                std::max<std::size_t>(cfg.output_grid.empty() ? cfg.output_points
                                                              : cfg.output_grid.size(),
                                      64);
            // one combined grid: negative window, crossing window, positive window
            auto neg = window_grid(-params.tau0, -edge, n);
            auto mid = window_grid(-0.5, 0.5, n | 1);  // odd count -> includes 0
            auto pos = window_grid(0.0, params.tau0, n);
            std::vector<double> grid;
            for (double g : neg) grid.push_back(g);
            for (double g : mid)
                if (g > grid.back() + 1e-12) grid.push_back(g);
            for (double g : pos)
                if (g > grid.back() + 1e-12) grid.push_back(g);
            cfg.output_grid = grid;
            const auto sol = solve_riccati(params, cfg);

            // target curve: numeric eta (fig 11) or the linearized eta (fig 10)
            auto target = [&](std::size_t i) {
                return figure == 11 ? sol.samples[i].eta
                                    : markov::eta_markov(params, sol.samples[i].tau);
            };
            cplx target0{};
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (grid[i] == 0.0) target0 = target(i);
            const auto taylor_first =
                figure == 11 ? riccati::eta_taylor0_exact(target0, params).first
                             : markov::eta_markov_taylor0(params).first;
            const auto taylor_second =
                figure == 11 ? riccati::eta_taylor0_exact(target0, params).second
                             : markov::eta_markov_taylor0(params).second;

            const std::string stem = "fig" + std::to_string(figure);
            // negative-domain dataset
            {
                std::vector<double> tau;
                std::vector<cplx> t, approx;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    if (grid[i] > -edge + 1e-12) continue;
                    tau.push_back(grid[i]);
                    t.push_back(target(i));
                    approx.push_back(figure == 11
                                         ? riccati::eta_large_negative(params, grid[i]).value
                                         : markov::negative_time_approximants(params, grid[i])
                                               .eta);
                }
                dataset::ColumnSet data;
                std::vector<double> re(t.size()), im(t.size()), rea(t.size()), ima(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) {
                    re[i] = t[i].real();
                    im[i] = t[i].imag();
                    rea[i] = approx[i].real();
                    ima[i] = approx[i].imag();
                }
                data.add("tau", tau);
                data.add("re_target", std::move(re));
                data.add("im_target", std::move(im));
                data.add("re_early_time", std::move(rea));
                data.add("im_early_time", std::move(ima));
                write_dataset(dir / (stem + "_negative" + ext), fmt,
                              meta_for(params, "negative_domain"), data);
                std::cout << (dir / (stem + "_negative" + ext)).string() << "\n";
            }
            // crossing-window dataset
            {
                dataset::ColumnSet data;
                std::vector<double> tau, re, im, rem, imm;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    if (std::abs(grid[i]) > 0.5 + 1e-12) continue;
                    tau.push_back(grid[i]);
                    const cplx t = target(i);
                    const cplx model = target0 + taylor_first * grid[i] +
                                       0.5 * taylor_second * grid[i] * grid[i];
                    re.push_back(t.real());
                    im.push_back(t.imag());
                    rem.push_back(model.real());
                    imm.push_back(model.imag());
                }
                data.add("tau", std::move(tau));
                data.add("re_target", std::move(re));
                data.add("im_target", std::move(im));
                data.add("re_taylor", std::move(rem));
                data.add("im_taylor", std::move(imm));
                write_dataset(dir / (stem + "_crossing" + ext), fmt,
                              meta_for(params, "crossing_window"), data);
                std::cout << (dir / (stem + "_crossing" + ext)).string() << "\n";
            }
            // positive-domain dataset
            {
                dataset::ColumnSet data;
                std::vector<double> tau, re, im, rei, imi;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    if (grid[i] < -1e-12) continue;
                    tau.push_back(grid[i]);
                    const cplx t = target(i);
                    const cplx iter = riccati::eta_iterated_additive(params, grid[i]);
                    re.push_back(t.real());
                    im.push_back(t.imag());
                    rei.push_back(iter.real());
                    imi.push_back(iter.imag());
                }
                data.add("tau", std::move(tau));
                data.add("re_target", std::move(re));
                data.add("im_target", std::move(im));
                data.add("re_iterate", std::move(rei));
                data.add("im_iterate", std::move(imi));
                write_dataset(dir / (stem + "_positive" + ext), fmt,
                              meta_for(params, "positive_domain"), data);
                std::cout << (dir / (stem + "_positive" + ext)).string() << "\n";
            }
            return kExitOk;
        }
        default:
            throw CLI::ValidationError("unknown figure id (use 1, 3, 5-11)");
    }
}

// ------------------------------------------------------------------- compare

struct Series {
    std::vector<double> tau;
    std::vector<cplx> a, b;
};

Series series_for(const std::string& rep, const Params& params, const SolverConfig& cfg) {
    Series s;
    auto from_trajectory = [&](const Trajectory& traj) {
        for (const auto& smp : traj.samples) {
            s.tau.push_back(smp.tau);
            s.a.push_back(smp.a);
            s.b.push_back(smp.b);
        }
    };
    if (rep == "ode") {
        from_trajectory(solve_schroedinger(params, cfg));
    } else if (rep == "interaction") {
        auto traj = solve_interaction(params, cfg);
        for (auto& smp : traj.samples) smp = to_schroedinger(smp, params);
        traj.picture = Picture::schroedinger;
        from_trajectory(traj);
    } else if (rep == "second-order") {
        from_trajectory(solve_second_order(params, cfg).as_trajectory());
    } else if (rep == "riccati") {
        from_trajectory(riccati::reconstruct_amplitudes(solve_riccati(params, cfg)));
    } else if (rep == "markov") {
        const auto grid = cfg.output_grid.empty()
                              ? make_uniform_grid(params, cfg.output_points)
                              : cfg.output_grid;
        const auto sol = markov::markov_solution(params, grid);
        const cplx start = detail::cis_prod(-0.5 * params.epsilon, params.tau0, params.tau0);
        for (std::size_t i = 0; i < sol.samples.size(); ++i) {
            const auto& smp = sol.samples[i];
            const cplx a = start * detail::cis_prod(0.5 * params.epsilon, smp.tau, smp.tau) *
                           std::exp(-smp.H);
            s.tau.push_back(smp.tau);
            s.a.push_back(a);
            s.b.push_back(cplx{0.0, -1.0} * smp.eta * a);
        }
    } else if (rep == "exact") {
        const auto grid = cfg.output_grid.empty()
                              ? make_uniform_grid(params, cfg.output_points)
                              : cfg.output_grid;
        const auto values = parallel::exact_amplitudes_grid(params, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            s.tau.push_back(grid[i]);
            s.a.push_back(values[i].a);
            s.b.push_back(values[i].b);
        }
    } else {
        throw CLI::ValidationError("unknown representation '" + rep +
                                   "' (ode, interaction, second-order, riccati, markov, exact)");
    }
    return s;
}

struct CheckRow {
    std::string name;
    double measured;
    double threshold;
    std::string status;  // pass / fail / expected-fail
};

int cmd_compare(const CommonOpts& opts, const std::string& reps_csv, const std::string& out) {
    const Params params = resolve_params(opts, 8.581, false);
    SolverConfig cfg = solver_config(opts, params);

    std::vector<std::string> reps;
    std::stringstream ss(reps_csv);
    std::string item;
    while (std::getline(ss, item, ',')) reps.push_back(item);
    if (reps.size() != 2) throw CLI::ValidationError("--reps needs exactly two names");

    const Series sa = series_for(reps[0], params, cfg);
    const Series sb = series_for(reps[1], params, cfg);
    if (sa.tau.size() != sb.tau.size())
        throw NumericalError("compare: representations produced different grids");

    double max_da = 0.0, max_db = 0.0, sum_da2 = 0.0, sum_db2 = 0.0;
    std::vector<double> abs_da(sa.tau.size()), abs_db(sa.tau.size());
    for (std::size_t i = 0; i < sa.tau.size(); ++i) {
        abs_da[i] = std::abs(sa.a[i] - sb.a[i]);
        abs_db[i] = std::abs(sa.b[i] - sb.b[i]);
        max_da = std::max(max_da, abs_da[i]);
        max_db = std::max(max_db, abs_db[i]);
        sum_da2 += abs_da[i] * abs_da[i];
        sum_db2 += abs_db[i] * abs_db[i];
    }
    const double rms_da = std::sqrt(sum_da2 / static_cast<double>(sa.tau.size()));
    const double rms_db = std::sqrt(sum_db2 / static_cast<double>(sa.tau.size()));

    const bool has_markov = reps[0] == "markov" || reps[1] == "markov";
    std::vector<CheckRow> checks;
    if (!has_markov) {
        checks.push_back({"max |da| (equivalent representations)", max_da, 1e-6,
                          max_da <= 1e-6 ? "pass" : "fail"});
        checks.push_back({"max |db| (equivalent representations)", max_db, 1e-6,
                          max_db <= 1e-6 ? "pass" : "fail"});
    } else {
        const double a_gap =
            std::abs(std::abs(sa.a.back()) - std::abs(sb.a.back()));
        const double a_tol = 2.0 / (params.epsilon * params.tau0);
        checks.push_back({"final |a| agreement (linearized-vs-full tail bound)", a_gap, a_tol,
                          a_gap <= a_tol ? "pass" : "fail"});
        const double b_gap = std::abs(std::abs(sa.b.back()) - std::abs(sb.b.back()));
        const double b_ref = exact::asymptotic_b_modulus(params.epsilon);
        const double rel = b_gap / b_ref;
        checks.push_back({"final |b| agreement; the linearized model is structurally off "
                          "here except for large epsilon",
                          rel, 0.02, rel <= 0.02 ? "pass" : "expected-fail"});
    }

    // asymptotic scalar table
    dataset::Metadata meta = base_metadata("compare", opts, params);
    meta.add("representation_a", reps[0]);
    meta.add("representation_b", reps[1]);
    meta.add("max_abs_da", dataset::format_double(max_da));
    meta.add("max_abs_db", dataset::format_double(max_db));
    meta.add("rms_da", dataset::format_double(rms_da));
    meta.add("rms_db", dataset::format_double(rms_db));
    meta.add("asymptote_abs_a", dataset::format_double(exact::asymptotic_a_modulus(params.epsilon)));
    meta.add("asymptote_abs_b", dataset::format_double(exact::asymptotic_b_modulus(params.epsilon)));
    meta.add("asymptote_abs_b_linearized",
             dataset::format_double(markov::b_markov_asymptotic_modulus(params.epsilon)));
    meta.add("asymptote_abs_eta",
             dataset::format_double(exact::asymptotic_eta_modulus(params.epsilon)));
    meta.add("asymptote_arg_b", dataset::format_double(exact::asymptotic_b_phase(params)));
    for (const auto& row : checks) {
        std::ostringstream line;
        line << row.name << "; measured=" << dataset::format_double(row.measured)
             << "; threshold=" << dataset::format_double(row.threshold)
             << "; status=" << row.status;
        meta.add("check", line.str());
    }

    dataset::ColumnSet data;
    data.add("tau", sa.tau);
    data.add("abs_da", std::move(abs_da));
    data.add("abs_db", std::move(abs_db));
    if (!out.empty()) write_dataset(out, format_of(opts), meta, data);

    bool failed = false;
    for (const auto& row : checks) {
        std::cout << row.status << ": " << row.name
                  << " (measured " << dataset::format_double(row.measured) << ", threshold "
                  << dataset::format_double(row.threshold) << ")\n";
        failed = failed || row.status == "fail";
    }
    return failed ? kExitChecksFailed : kExitOk;
}

// -------------------------------------------------------------------- report

int cmd_report(const CommonOpts& opts, const std::string& out) {
    acceptance::Config cfg;
    cfg.rel_tol = opts.rel_tol;
    cfg.abs_tol = opts.abs_tol;
    const auto results = acceptance::run_all(cfg);
    std::cout << acceptance::to_text(results);
    if (!out.empty()) {
        fs::path path(out);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream file(path);
        if (!file) throw std::runtime_error("report: cannot open " + out);
        file << acceptance::to_json(results) << "\n";
        std::cout << out << "\n";
    }
    return acceptance::count_failures(results) == 0 ? kExitOk : kExitChecksFailed;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Landau-Zener two-level dynamics: cross-validated propagation,\n"
                 "Riccati / linearized / cylinder-function representations,\n"
                 "figure datasets and an acceptance report."};
    app.require_subcommand(1);

    CommonOpts sim_opts, fig_opts, cmp_opts, rep_opts;
    std::string sim_out, sim_rep = "ode";
    auto* sim = app.add_subcommand("simulate", "propagate and write a trajectory dataset");
    add_common(sim, sim_opts, true);
    sim->add_option("--out", sim_out, "output path")->required();
    sim->add_option("--rep", sim_rep, "ode or riccati (adds eta/phase columns)")
        ->check(CLI::IsMember({"ode", "riccati"}));

    int figure_id = 0;
    std::string fig_out = ".";
    auto* fig = app.add_subcommand("figures", "emit curve datasets of the figure catalog");
    add_common(fig, fig_opts, false);
    fig->add_option("--figure", figure_id, "figure id in {1,3,5,6,7,8,9,10,11}")->required();
    fig->add_option("--out", fig_out, "output directory");

    std::string cmp_reps, cmp_out;
    auto* cmp = app.add_subcommand("compare", "deviation report between two representations");
    add_common(cmp, cmp_opts, false);
    cmp->add_option("--reps", cmp_reps, "two comma-separated representation names")
        ->required();
    cmp->add_option("--out", cmp_out, "report dataset path");

    std::string rep_out;
    auto* rep = app.add_subcommand("report", "run the full acceptance-criteria suite");
    add_common(rep, rep_opts, false);
    rep->add_option("--out", rep_out, "JSON report path");

    try {
        auto args = expand_config(argc, argv);
        std::vector<const char*> argv2{argv[0]};
        for (const auto& a : args) argv2.push_back(a.c_str());
        app.parse(static_cast<int>(argv2.size()), argv2.data());
        if (sim->parsed()) return cmd_simulate(sim_opts, sim_out, sim_rep);
        if (fig->parsed()) return cmd_figures(fig_opts, figure_id, fig_out);
        if (cmp->parsed()) return cmd_compare(cmp_opts, cmp_reps, cmp_out);
        if (rep->parsed()) return cmd_report(rep_opts, rep_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace lz::cli
