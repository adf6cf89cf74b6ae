#ifndef LZ_TESTS_HELPERS_HPP
#define LZ_TESTS_HELPERS_HPP

#include <complex>
#include <random>

#include "lz/core.hpp"

namespace lz::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx random_unit() {
    const double phase = uniform(-3.14159, 3.14159);
    return {std::cos(phase), std::sin(phase)};
}

/// random state with |a|^2 + |b|^2 = 1
inline std::pair<cplx, cplx> random_normalized() {
    const double mix = uniform(0.0, 1.5707963);
    return {std::cos(mix) * random_unit(), std::sin(mix) * random_unit()};
}

/// 5-point 4th-order first derivative of an analytic function, real step h
template <typename F>
cplx derivative5(F&& f, cplx z, double h) {
    return (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h);
}

/// 5-point 4th-order second derivative
template <typename F>
cplx second_derivative5(F&& f, cplx z, double h) {
    return (-f(z - 2.0 * h) + 16.0 * f(z - h) - 30.0 * f(z) + 16.0 * f(z + h) -
            f(z + 2.0 * h)) /
           (12.0 * h * h);
}

/// test-local adaptive Simpson, independent of the library quadrature
template <typename F>
cplx simpson(F&& f, double a, double b, double tol, int depth, cplx whole, cplx fa, cplx fm,
             cplx fb) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f(lm), frm = f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 50 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, 0.5 * tol, depth + 1, left, fa, flm, fm) +
           simpson(f, m, b, 0.5 * tol, depth + 1, right, fm, frm, fb);
}

template <typename F>
cplx simpson_integrate(F&& f, double a, double b, double tol) {
    const cplx fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, tol, 0, whole, fa, fm, fb);
}

}  // namespace lz::testing

#endif
