#ifndef LZ_QUADRATURE_HPP
#define LZ_QUADRATURE_HPP

#include <functional>

#include "lz/core.hpp"

namespace lz::quadrature {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 40;
};

/// Adaptive Gauss-Kronrod 15(7) on [a, b].  Works for a > b (sign flips).
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const Options& opt = {});
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const Options& opt = {});

/// Same, but the interval is pre-split at the local oscillation scale
/// pi/(eps*(|tau|+1)) before the adaptive rule sees it.  Meant for chirped
/// integrands exp(+-i*eps*tau^2)*smooth.
cplx integrate_oscillatory(const std::function<cplx(double)>& f, double a, double b,
                           double epsilon, const Options& opt = {});

}  // namespace lz::quadrature

#endif
