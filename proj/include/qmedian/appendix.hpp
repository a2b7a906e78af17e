#pragma once

#include <cstdint>
#include <vector>

#include "qmedian/dataset.hpp"
#include "qmedian/estimator.hpp"

namespace qmedian {

struct AdaptiveOptions {
    double eps_min = 0.01;  // in (0, 0.1)
    double theta = 0.1;
    double kappa = 2.0;
    Mode mode = Mode::exact;
    std::uint64_t seed = 0;
    // false: eps0 <- eps0 / 2 after each inconclusive call.
    // true:  eps0 <- |est| / 2, which can collapse the prior on a near-zero estimate.
    bool literal_update = false;
};

struct AdaptiveResult {
    EstimateRecord record;
    std::vector<double> eps0_path;  // eps0 of every eps_est call, in order
    int calls = 0;
};

// Starts at eps0 = 0.1 and shrinks the prior until the estimate stands out
// (|est| > 0.2 eps0, or the fraction is beyond the bracket) or eps0 reaches
// eps_min. At most ceil(log2(0.1 / eps_min)) + 1 calls.
AdaptiveResult eps_est_adaptive(const Dataset& d, double mu, const AdaptiveOptions& options);

struct MedianStep {
    double mu;
    double eps_hat;
    Sign sign;
    int calls;
};

struct MedianResult {
    double mu_hat = 0.0;
    int steps = 0;
    int calls = 0;
    std::vector<MedianStep> trace;
};

// Bisection on the threshold over [min, max]: a positive estimate at the
// midpoint moves the upper end down, anything else moves the lower end up.
// Runs exactly ceil(log2((max - min) / resolution)) steps and returns the
// final midpoint. Throws ParameterError unless min < max and resolution > 0.
MedianResult median_search(const Dataset& d, double min, double max, double resolution,
                           const AdaptiveOptions& options);

// Number of halvings of `width` needed to reach `resolution` or below.
int bisection_steps(double width, double resolution);

}  // namespace qmedian
