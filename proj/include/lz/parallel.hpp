#ifndef LZ_PARALLEL_HPP
#define LZ_PARALLEL_HPP

// OpenMP-parallel evaluation of the pointwise closed-form kernels over
// output grids, with the serial loop kept as the reference path.  Both
// paths run identical per-point code, so results agree bitwise; the tests
// assert that and the benchmark target compares their throughput.

#include <cstddef>
#include <vector>

#include "lz/core.hpp"
#include "lz/exact.hpp"
#include "lz/markov.hpp"

namespace lz::parallel {

template <typename F>
void for_each_index(std::size_t n, bool parallel, F&& body) {
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

/// eta_M on a grid.
std::vector<cplx> eta_markov_grid(const Params& params, const std::vector<double>& taus,
                                  bool parallel = true);

/// Cylinder-function amplitudes on a grid.
std::vector<exact::ExactAmplitudes> exact_amplitudes_grid(const Params& params,
                                                          const std::vector<double>& taus,
                                                          bool parallel = true);

/// Early-time approximant record on a grid.
std::vector<markov::NegativeTimeApproximants> negative_time_grid(
    const Params& params, const std::vector<double>& taus, bool parallel = true);

}  // namespace lz::parallel

#endif
