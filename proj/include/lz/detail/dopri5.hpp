#ifndef LZ_DETAIL_DOPRI5_HPP
#define LZ_DETAIL_DOPRI5_HPP

// Dormand-Prince 5(4) with PI stepsize control and the order-4 continuous
// extension (Hairer's contd5).  State is a fixed-size array of complex
// doubles; integration direction follows sign(t_end - t_start).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>

#include "lz/core.hpp"

namespace lz::detail {

template <std::size_t N>
using State = std::array<std::complex<double>, N>;

// Butcher tableau
inline constexpr double a21 = 0.2;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
inline constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <std::size_t N>
struct DenseSegment {
    double t0 = 0.0;
    double h = 0.0;
    State<N> rcont1{}, rcont2{}, rcont3{}, rcont4{}, rcont5{};

    State<N> eval(double t) const {
        const double theta = (t - t0) / h;
        const double theta1 = 1.0 - theta;
        State<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = rcont1[i] +
                   theta * (rcont2[i] +
                            theta1 * (rcont3[i] + theta * (rcont4[i] + theta1 * rcont5[i])));
        return y;
    }
};

struct Dopri5Stats {
    std::size_t n_steps = 0;
    std::size_t n_rejected = 0;
    std::size_t n_rhs_evals = 0;
};

struct Dopri5Options {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    std::size_t max_steps = 2'000'000'000;
    double fixed_step = 0.0;  // > 0 turns off adaptivity
    // extra per-location cap on |h|; return +inf for "no cap"
    std::function<double(double)> max_step_at;
};

// rhs(t, y, dydt); observer(t_old, t_new, segment) after each accepted step.
template <std::size_t N, typename Rhs, typename Observer>
Dopri5Stats integrate_dopri5(Rhs&& rhs, State<N>& y, double t_start, double t_end,
                             const Dopri5Options& opt, Observer&& observer) {
    Dopri5Stats stats;
    if (t_end == t_start) return stats;
    const double dir = t_end > t_start ? 1.0 : -1.0;
    const double span = std::abs(t_end - t_start);

    auto cap = [&](double t) {
        double m = span;
        if (opt.max_step_at) m = std::min(m, opt.max_step_at(t));
        return m;
    };

    double t = t_start;
    State<N> k1;
    rhs(t, y, k1);
    ++stats.n_rhs_evals;

    double h = opt.fixed_step > 0.0 ? opt.fixed_step : std::min(1e-4 * span + 1e-8, cap(t));
    double facold = 1e-4;
    constexpr double beta = 0.04;
    constexpr double safe = 0.9;
    constexpr double facl = 0.2;
    constexpr double facr = 10.0;

    bool last = false;
    while (!last) {
        if (stats.n_steps + stats.n_rejected >= opt.max_steps)
            throw NumericalError("dopri5: step count cap exceeded");
        h = std::min(h, cap(t));
        if (opt.fixed_step > 0.0) h = std::min(opt.fixed_step, cap(t));
        if ((t + 1.01 * h * dir - t_end) * dir > 0.0) {
            h = std::abs(t_end - t);
            last = true;
        }
        if (std::abs(h) <= std::abs(t) * std::numeric_limits<double>::epsilon() * 4.0)
            throw NumericalError("dopri5: stepsize underflow");
        const double hs = h * dir;

        State<N> k2, k3, k4, k5, k6, k7, yt, ynew;
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * (a21 * k1[i]);
        rhs(t + c2 * hs, yt, k2);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * hs, yt, k3);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * hs, yt, k4);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * hs, yt, k5);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] +
                    hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + hs, yt, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] +
                      hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs(t + hs, ynew, k7);
        stats.n_rhs_evals += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const std::complex<double> ee =
                hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                      e7 * k7[i]);
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(ee) / sc;
            err += r * r;
        }
        err = std::sqrt(err / N);

        if (opt.fixed_step <= 0.0) {
            const double fac11 = std::pow(err, 0.2 - beta * 0.75);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / facr, std::min(1.0 / facl, fac / safe));
            const double h_new = h / fac;
            if (err > 1.0) {
                h /= std::min(1.0 / facl, fac11 / safe);
                ++stats.n_rejected;
                last = false;
                continue;
            }
            facold = std::max(err, 1e-4);
            h = h_new;
        }

        DenseSegment<N> seg;
        seg.t0 = t;
        seg.h = hs;
        for (std::size_t i = 0; i < N; ++i) {
            const std::complex<double> ydiff = ynew[i] - y[i];
            const std::complex<double> bspl = hs * k1[i] - ydiff;
            seg.rcont1[i] = y[i];
            seg.rcont2[i] = ydiff;
            seg.rcont3[i] = bspl;
            seg.rcont4[i] = ydiff - hs * k7[i] - bspl;
            seg.rcont5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                  d6 * k6[i] + d7 * k7[i]);
        }

        const double t_new = last ? t_end : t + hs;
        observer(t, t_new, seg);
        y = ynew;
        k1 = k7;  // FSAL
        t = t_new;
        ++stats.n_steps;
    }
    return stats;
}

}  // namespace lz::detail

#endif
