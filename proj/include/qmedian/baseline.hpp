#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qmedian/dataset.hpp"

namespace qmedian {

struct ClassicalEstimate {
    double f_hat;    // fraction of uniformly drawn states below threshold
    double eps_hat;  // 2 f_hat - 1
    long samples;
    // 2 sqrt(f_hat (1 - f_hat) / m): plug-in standard error of eps_hat.
    double stderr_model;
};

// m uniform draws with replacement from one splitmix64 stream. Throws
// ParameterError for m < 1.
ClassicalEstimate classical_estimate(const ThresholdOracle& oracle, long m, std::uint64_t seed);

// Estimates after each of the (strictly increasing) sample counts, all taken
// from the same stream: entry j equals classical_estimate(oracle, checkpoints[j], seed).
std::vector<ClassicalEstimate> classical_trace(const ThresholdOracle& oracle,
                                               std::span<const long> checkpoints,
                                               std::uint64_t seed);

// ceil(1 / precision^2). Throws ParameterError unless 0 < precision <= 1.
long classical_sample_budget(double precision);

}  // namespace qmedian
