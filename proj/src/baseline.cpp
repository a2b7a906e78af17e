#include "qmedian/baseline.hpp"

#include <cmath>

#include "qmedian/errors.hpp"
#include "qmedian/random.hpp"

namespace qmedian {

namespace {

ClassicalEstimate summarize(long hits, long m) {
    const double f = static_cast<double>(hits) / static_cast<double>(m);
    return {f, 2.0 * f - 1.0, m, 2.0 * std::sqrt(f * (1.0 - f) / static_cast<double>(m))};
}

}  // namespace

ClassicalEstimate classical_estimate(const ThresholdOracle& oracle, long m, std::uint64_t seed) {
    const long checkpoint[] = {m};
    return classical_trace(oracle, checkpoint, seed).front();
}

std::vector<ClassicalEstimate> classical_trace(const ThresholdOracle& oracle,
                                               std::span<const long> checkpoints,
                                               std::uint64_t seed) {
    long previous = 0;
    for (long m : checkpoints) {
        if (m < 1) throw ParameterError("sample count must be >= 1");
        if (m <= previous) throw ParameterError("checkpoints must be strictly increasing");
        previous = m;
    }
    const auto size = static_cast<double>(oracle.size());
    const BasisMask& below = oracle.below_mask();
    SplitMix64 rng(seed);
    std::vector<ClassicalEstimate> out;
    out.reserve(checkpoints.size());
    long drawn = 0;
    long hits = 0;
    for (long m : checkpoints) {
        for (; drawn < m; ++drawn) {
            const auto p = static_cast<BasisIndex>(rng.uniform() * size);
            hits += below.test(p) ? 1 : 0;
        }
        out.push_back(summarize(hits, m));
    }
    return out;
}

long classical_sample_budget(double precision) {
    if (!(precision > 0.0 && precision <= 1.0)) {
        throw ParameterError("precision must lie in (0, 1]");
    }
    return static_cast<long>(std::ceil(1.0 / (precision * precision) * (1.0 - 1e-12)));
}

}  // namespace qmedian
