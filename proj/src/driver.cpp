#include "qmedian/driver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmedian/errors.hpp"
#include "qmedian/random.hpp"

namespace qmedian {

namespace {

constexpr double kNormDriftLimit = 1e-6;

void check_norm(const StateVector& state) {
    const double drift = std::abs(state.norm_squared() - 1.0);
    if (!(drift <= kNormDriftLimit)) {
        throw NumericalError("register norm drifted by " + std::to_string(drift));
    }
}

StateVector final_state(const ThresholdOracle& oracle, long beta) {
    StateVector state = prepare(oracle);
    amplification_loop(state, oracle, beta);
    return state;
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::exact ? "exact" : "sample";
}

Mode parse_mode(std::string_view text) {
    if (text == "exact") return Mode::exact;
    if (text == "sample" || text == "sampled") return Mode::sampled;
    throw ParameterError("unknown mode '" + std::string(text) + "'; expected exact or sample");
}

void validate(const RunPlan& plan) {
    if (!(plan.eps0 > 0.0 && plan.eps0 <= 0.1)) throw ParameterError("eps0 must lie in (0, 0.1]");
    if (!(plan.theta > 0.0)) throw ParameterError("theta must be positive");
    if (!(plan.kappa > 0.0)) throw ParameterError("kappa must be positive");
    if (plan.alpha < 1) throw ParameterError("alpha must be >= 1");
    if (plan.beta < 1) throw ParameterError("beta must be >= 1");
}

StateVector prepare(const ThresholdOracle& oracle) {
    StateVector state = uniform_state(oracle.bits(), oracle.bits());
    conditional_phase(state, oracle.above_mask(), std::numbers::pi / 2);
    shift(state);
    return state;
}

void amplification_loop(StateVector& state, const ThresholdOracle& oracle, long beta) {
    for (long r = 0; r < beta; ++r) {
        conditional_phase(state, oracle.below_mask(), std::numbers::pi);
        diffusion(state);
        conditional_phase(state, oracle.above_mask(), std::numbers::pi);
        diffusion(state);
    }
}

ExperimentResult run_experiment(const ThresholdOracle& oracle, const RunPlan& plan) {
    validate(plan);
    const StateVector state = final_state(oracle, plan.beta);
    check_norm(state);

    ExperimentResult result;
    result.beta = plan.beta;
    result.exact_p = probability_of(state, oracle.below_mask());
    if (plan.mode == Mode::exact) {
        result.f_hat = result.exact_p;
        return result;
    }

    result.alpha = plan.alpha;
    if (plan.record_outcomes) result.outcomes.reserve(static_cast<std::size_t>(plan.alpha));
    const CdfTable cdf(state);
    long hits = 0;
    for (long i = 0; i < plan.alpha; ++i) {
        SplitMix64 rng(derive_seed(plan.seed, static_cast<std::uint64_t>(i)));
        BasisIndex p = 0;
        if (plan.resimulate) {
            p = sample(final_state(oracle, plan.beta), rng);
        } else {
            p = cdf.draw(rng.uniform());
        }
        hits += oracle.below_mask().test(p) ? 1 : 0;
        if (plan.record_outcomes) result.outcomes.push_back(p);
    }
    result.f_hat = static_cast<double>(hits) / static_cast<double>(plan.alpha);
    return result;
}

double measure_uniform_fraction(const ThresholdOracle& oracle, Mode mode, long alpha,
                                std::uint64_t seed) {
    const StateVector state = uniform_state(oracle.bits(), oracle.bits());
    if (mode == Mode::exact) return probability_of(state, oracle.below_mask());
    if (alpha < 1) throw ParameterError("alpha must be >= 1");
    const CdfTable cdf(state);
    long hits = 0;
    for (long i = 0; i < alpha; ++i) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        hits += oracle.below_mask().test(cdf.draw(rng.uniform())) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(alpha);
}

long choose_beta(double eps0, double scale) {
    if (!(eps0 > 0.0 && eps0 <= 0.1)) throw ParameterError("eps0 must lie in (0, 0.1]");
    if (!(scale > 0.0)) throw ParameterError("beta scale must be positive");
    // The relative nudge keeps exact quotients such as 0.05/0.001 from flooring low.
    const double b = std::floor(scale / eps0 * (1.0 + 1e-12));
    return b < 1.0 ? 1L : static_cast<long>(b);
}

long choose_alpha(double theta, double multiplier) {
    if (!(theta > 0.0 && theta <= 1.0)) throw ParameterError("theta must lie in (0, 1]");
    if (!(multiplier > 0.0)) throw ParameterError("alpha multiplier must be positive");
    return static_cast<long>(std::ceil(multiplier / (theta * theta) * (1.0 - 1e-12)));
}

}  // namespace qmedian
