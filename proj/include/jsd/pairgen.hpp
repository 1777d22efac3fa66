#pragma once

#include <cstdint>
#include <vector>

#include "jsd/types.hpp"

namespace jsd {

struct GenSpec {
    std::size_t n = 2;             // number of bins, >= 2
    double target_log10_eps = -2;  // log10 of the wanted eps RMS norm, < 0
    double alpha = 0.0;            // pi1 - pi2, in [-1, 1]
    std::uint64_t seed = 0;
};

struct GeneratedPair {
    WeightedPair pair;
    double achieved_eps_rms = 0.0;
    std::vector<double> eps; // internal perturbation, for round-trip checks
};

// Uniform sample from the probability simplex (normalized exponentials).
std::vector<double> sample_simplex(std::size_t n, std::uint64_t seed);

// Draws pbar uniformly on the simplex and a Gaussian perturbation direction,
// projects it to weighted zero sum, and scales it so the achieved
// log10 eps RMS norm lands within +-0.05 of target (exact hit when nothing
// clips). Components are clipped to keep every probability inside [0,1];
// when clipping saturates the norm below the tolerance band the draw is
// rejected and redrawn, failing after max_attempts attempts.
GeneratedPair sample_pair(const GenSpec& spec, int max_attempts = 1000);

} // namespace jsd
