#include "lz/parallel.hpp"

namespace lz::parallel {

std::vector<cplx> eta_markov_grid(const Params& params, const std::vector<double>& taus,
                                  bool parallel) {
    std::vector<cplx> out(taus.size());
    for_each_index(taus.size(), parallel,
                   [&](std::size_t i) { out[i] = markov::eta_markov(params, taus[i]); });
    return out;
}

std::vector<exact::ExactAmplitudes> exact_amplitudes_grid(const Params& params,
                                                          const std::vector<double>& taus,
                                                          bool parallel) {
    std::vector<exact::ExactAmplitudes> out(taus.size());
    for_each_index(taus.size(), parallel,
                   [&](std::size_t i) { out[i] = exact::exact_amplitudes(params, taus[i]); });
    return out;
}

std::vector<markov::NegativeTimeApproximants> negative_time_grid(
    const Params& params, const std::vector<double>& taus, bool parallel) {
    std::vector<markov::NegativeTimeApproximants> out(taus.size());
    for_each_index(taus.size(), parallel, [&](std::size_t i) {
        out[i] = markov::negative_time_approximants(params, taus[i]);
    });
    return out;
}

}  // namespace lz::parallel
