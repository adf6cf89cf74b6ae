// Serial vs OpenMP throughput of the pointwise closed-form kernels.
// Build target only; not part of the test suite.

#include <chrono>
#include <cstdio>

#include "lz/integrate.hpp"
#include "lz/parallel.hpp"

using namespace lz;

namespace {

template <typename F>
double time_ms(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

int main() {
    const Params p(4.0, 20.0);

    {
        const auto grid = make_uniform_grid(p, 400000);
        volatile double sink = 0.0;
        const double serial = time_ms([&] {
            const auto v = parallel::eta_markov_grid(p, grid, false);
            sink = v.back().real();
        });
        const double threaded = time_ms([&] {
            const auto v = parallel::eta_markov_grid(p, grid, true);
            sink = v.back().real();
        });
        std::printf("eta_markov grid (%zu points): serial %8.1f ms | openmp %8.1f ms | x%.2f\n",
                    grid.size(), serial, threaded, serial / threaded);
        (void)sink;
    }
    {
        const auto grid = make_uniform_grid(p, 20000);
        volatile double sink = 0.0;
        const double serial = time_ms([&] {
            const auto v = parallel::exact_amplitudes_grid(p, grid, false);
            sink = v.back().a.real();
        });
        const double threaded = time_ms([&] {
            const auto v = parallel::exact_amplitudes_grid(p, grid, true);
            sink = v.back().a.real();
        });
        std::printf("cylinder amplitudes (%zu points): serial %8.1f ms | openmp %8.1f ms | x%.2f\n",
                    grid.size(), serial, threaded, serial / threaded);
        (void)sink;
    }
    {
        std::vector<double> window;
        for (int k = 0; k <= 200000; ++k) window.push_back(-20.0 + 19.0 * k / 200000.0);
        volatile double sink = 0.0;
        const double serial = time_ms([&] {
            const auto v = parallel::negative_time_grid(p, window, false);
            sink = v.back().A;
        });
        const double threaded = time_ms([&] {
            const auto v = parallel::negative_time_grid(p, window, true);
            sink = v.back().A;
        });
        std::printf("early-time approximants (%zu points): serial %8.1f ms | openmp %8.1f ms | x%.2f\n",
                    window.size(), serial, threaded, serial / threaded);
        (void)sink;
    }
    return 0;
}
