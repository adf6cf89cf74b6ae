#ifndef LZ_DETAIL_DDOUBLE_HPP
#define LZ_DETAIL_DDOUBLE_HPP

// Minimal double-double arithmetic.  Used where plain doubles lose too much
// to cancellation: chirp-phase reduction mod 2*pi at large arguments and the
// alternating power series of the special-function kernels.

#include <cmath>
#include <complex>

namespace lz::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_add(dd a, double b) { return dd_add(a, dd{b, 0.0}); }

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd a, double b) { return dd_mul(a, dd{b, 0.0}); }

inline dd dd_div(dd a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double r = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q1, r);
}

inline double dd_value(dd a) { return a.hi + a.lo; }

// complex double-double
struct cdd {
    dd re, im;
};

inline cdd cdd_from(std::complex<double> z) { return {dd{z.real(), 0.0}, dd{z.imag(), 0.0}}; }

inline cdd cdd_add(cdd a, cdd b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline cdd cdd_mul(cdd a, cdd b) {
    dd re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
    dd im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return {re, im};
}

inline cdd cdd_mul(cdd a, double b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

inline cdd cdd_div(cdd a, double b) { return {dd_div(a.re, b), dd_div(a.im, b)}; }

inline std::complex<double> cdd_value(cdd a) { return {dd_value(a.re), dd_value(a.im)}; }

inline double cdd_abs(cdd a) { return std::abs(cdd_value(a)); }

inline constexpr double kTwoPiHi = 6.283185307179586;
inline constexpr double kTwoPiLo = 2.4492935982947064e-16;

// theta mod 2*pi computed in double-double, returned as a folded double.
inline double dd_mod_two_pi(dd theta) {
    double n = std::nearbyint(dd_value(theta) / kTwoPiHi);
    dd r = dd_sub(theta, dd_add(dd_mul(dd{kTwoPiHi, kTwoPiLo}, n), 0.0));
    return dd_value(r);
}

// exp(i*theta) with the angle carried in double-double before folding.
inline std::complex<double> cis_dd(dd theta) {
    double r = dd_mod_two_pi(theta);
    return {std::cos(r), std::sin(r)};
}

// exp(i * c * x * y): the quadratic chirp phases used throughout.  The
// product is formed exactly, so the folded angle keeps full precision even
// for c*x*y of order 1e7.
inline std::complex<double> cis_prod(double c, double x, double y) {
    dd theta = dd_mul(two_prod(x, y), dd{c, 0.0});
    return cis_dd(theta);
}

}  // namespace lz::detail

#endif
