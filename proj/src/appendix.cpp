#include "qmedian/appendix.hpp"

#include <cmath>
#include <numeric>

#include "qmedian/errors.hpp"
#include "qmedian/random.hpp"

namespace qmedian {

namespace {

constexpr double kStartEps0 = 0.1;
constexpr double kBreakRatio = 0.2;

}  // namespace

AdaptiveResult eps_est_adaptive(const Dataset& d, double mu, const AdaptiveOptions& options) {
    if (!(options.eps_min > 0.0 && options.eps_min < kStartEps0)) {
        throw ParameterError("eps_min must lie in (0, 0.1)");
    }
    AdaptiveResult out;
    double eps0 = kStartEps0;
    do {
        EstimateOptions est;
        est.eps0 = eps0;
        est.theta = options.theta;
        est.kappa = options.kappa;
        est.mode = options.mode;
        est.seed = derive_seed(options.seed, static_cast<std::uint64_t>(out.calls));
        out.record = eps_est(d, mu, est);
        out.eps0_path.push_back(eps0);
        ++out.calls;
        if (out.record.verdict == Verdict::eps_exceeds_eps0 ||
            out.record.magnitude > kBreakRatio * eps0) {
            break;
        }
        eps0 = options.literal_update ? 0.5 * out.record.magnitude : 0.5 * eps0;
    } while (eps0 > options.eps_min);
    return out;
}

int bisection_steps(double width, double resolution) {
    int steps = 0;
    while (width > resolution) {
        width *= 0.5;
        ++steps;
    }
    return steps;
}

MedianResult median_search(const Dataset& d, double min, double max, double resolution,
                           const AdaptiveOptions& options) {
    if (!(std::isfinite(min) && std::isfinite(max) && min < max)) {
        throw ParameterError("median search needs finite min < max");
    }
    if (!std::isfinite(max - min)) throw ParameterError("search range overflows");
    if (!(resolution > 0.0 && std::isfinite(resolution))) {
        throw ParameterError("resolution must be positive");
    }
    MedianResult out;
    double lower = min;
    double upper = max;
    out.steps = bisection_steps(max - min, resolution);
    for (int step = 0; step < out.steps; ++step) {
        const double mu = std::midpoint(lower, upper);
        AdaptiveOptions at = options;
        at.seed = derive_seed(options.seed, static_cast<std::uint64_t>(step));
        const AdaptiveResult est = eps_est_adaptive(d, mu, at);
        out.calls += est.calls;
        out.trace.push_back({mu, est.record.eps_hat, est.record.sign, est.calls});
        if (est.record.eps_hat > 0.0) {
            upper = mu;
        } else {
            lower = mu;
        }
    }
    out.mu_hat = std::midpoint(lower, upper);
    return out;
}

}  // namespace qmedian
