#include "lz/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace lz::quadrature {

namespace {

// Kronrod-15 / Gauss-7 nodes and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Gk15Result {
    T kronrod{};
    double error = 0.0;
};

template <typename T, typename F>
Gk15Result<T> gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T resk = kWgk[7] * f(center);
    T resg = kWg[3] * f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T fsum = f(center - dx) + f(center + dx);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    Gk15Result<T> out;
    out.kronrod = resk * half;
    out.error = std::abs((resk - resg) * half);
    return out;
}

template <typename T, typename F>
T adaptive(const F& f, double a, double b, const Options& opt, int depth, double tol_abs) {
    const auto r = gk15<T>(f, a, b);
    if (r.error <= std::max(tol_abs, opt.rel_tol * std::abs(r.kronrod)) ||
        depth >= opt.max_depth)
        return r.kronrod;
    const double mid = 0.5 * (a + b);
    return adaptive<T>(f, a, mid, opt, depth + 1, 0.5 * tol_abs) +
           adaptive<T>(f, mid, b, opt, depth + 1, 0.5 * tol_abs);
}

}  // namespace

cplx integrate(const std::function<cplx(double)>& f, double a, double b, const Options& opt) {
    if (a == b) return {0.0, 0.0};
    if (a > b) return -integrate(f, b, a, opt);
    return adaptive<cplx>(f, a, b, opt, 0, opt.abs_tol);
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opt) {
    if (a == b) return 0.0;
    if (a > b) return -integrate_real(f, b, a, opt);
    return adaptive<double>(f, a, b, opt, 0, opt.abs_tol);
}

cplx integrate_oscillatory(const std::function<cplx(double)>& f, double a, double b,
                           double epsilon, const Options& opt) {
    if (a == b) return {0.0, 0.0};
    if (a > b) return -integrate_oscillatory(f, b, a, epsilon, opt);
    const double span = b - a;
    cplx total{0.0, 0.0};
    double left = a;
    while (left < b) {
        const double cell = std::numbers::pi / (epsilon * (std::abs(left) + 1.0));
        const double right = std::min(b, left + cell);
        Options local = opt;
        local.abs_tol = opt.abs_tol * std::max((right - left) / span, 1e-6);
        total += adaptive<cplx>(f, left, right, local, 0, local.abs_tol);
        left = right;
    }
    return total;
}

}  // namespace lz::quadrature
