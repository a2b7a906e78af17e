#include "qmedian/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmedian/analytic.hpp"
#include "qmedian/errors.hpp"
#include "qmedian/random.hpp"

namespace qmedian {

namespace {

// Stream tags for the extra runs made while resolving the sign.
constexpr std::uint64_t kPerturbedStream = 0x51'4D'45'44'01ULL;
constexpr std::uint64_t kCoarseStream = 0x51'4D'45'44'02ULL;

// Magnitudes at or below this are treated as an exact zero, which has no sign.
constexpr double kZeroMagnitude = 1e-9;
// Exact-mode magnitudes closer than this are indistinguishable.
constexpr double kExactSlack = 1e-9;

constexpr double kInf = std::numeric_limits<double>::infinity();

double branch_fraction(double magnitude, long beta, Branch branch) {
    return analytic::predicted_fraction(branch == Branch::positive ? magnitude : -magnitude, beta);
}

std::optional<long> effective_alpha(const RunPlan& plan) {
    if (plan.mode == Mode::exact) return std::nullopt;
    return plan.alpha;
}

struct Observation {
    ExperimentResult result;
    std::optional<double> point;
    // Out-of-range measurements become [eps0, inf).
    double lo = 0.0;
    double hi = kInf;
};

Observation observe(const ThresholdOracle& oracle, const RunPlan& plan) {
    Observation obs{run_experiment(oracle, plan), std::nullopt};
    obs.point = invert_fraction(obs.result.f_hat, plan.beta, plan.eps0);
    const auto ci = confidence_interval(obs.result.f_hat, effective_alpha(plan), plan.kappa,
                                        plan.beta, plan.eps0);
    if (obs.point) {
        obs.lo = ci->lo;
        obs.hi = ci->hi;
    } else {
        obs.lo = ci ? ci->lo : plan.eps0;
        obs.hi = kInf;
    }
    return obs;
}

// Sign from the unamplified register, (1 + eps)/2 below. Only consulted when
// the amplified magnitude is beyond the bracket on both sides of the
// perturbation, where the imbalance is large enough for a direct read.
Sign coarse_sign(const ThresholdOracle& oracle, const RunPlan& plan) {
    const double p =
        measure_uniform_fraction(oracle, plan.mode, plan.alpha, derive_seed(plan.seed, kCoarseStream));
    const double imbalance = 2.0 * p - 1.0;
    const double slack =
        plan.mode == Mode::exact ? 0.0 : 2.0 * plan.kappa / std::sqrt(static_cast<double>(plan.alpha));
    if (imbalance > slack) return Sign::positive;
    if (imbalance < -slack) return Sign::negative;
    return Sign::unknown;
}

// Smallest threshold that moves at least one more value below mu.
std::optional<double> perturbed_threshold(const Dataset& d, double mu) {
    std::optional<double> next;
    for (double v : d.values()) {
        if (v >= mu && (!next || v < *next)) next = v;
    }
    if (!next) return std::nullopt;
    return std::nextafter(*next, kInf);
}

Sign resolve_sign_from(const Observation& base, const ThresholdOracle& oracle, const Dataset& d,
                       double mu, const RunPlan& plan) {
    const std::optional<double> mu_up = perturbed_threshold(d, mu);
    if (!mu_up) {
        throw DegenerateThresholdError("no dataset value at or above the threshold");
    }
    if (base.point && *base.point <= kZeroMagnitude) return Sign::unknown;

    RunPlan up_plan = plan;
    up_plan.seed = derive_seed(plan.seed, kPerturbedStream);
    const Observation up = observe(make_oracle(d, *mu_up), up_plan);

    if (!base.point && !up.point) return coarse_sign(oracle, plan);

    const double slack = plan.mode == Mode::exact ? kExactSlack : 0.0;
    if (up.lo > base.hi + slack) return Sign::positive;
    if (up.hi < base.lo - slack) return Sign::negative;
    return Sign::unknown;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
    return v == Verdict::ok ? "ok" : "eps_exceeds_eps0";
}

std::optional<double> invert_fraction(double f_hat, long beta, double eps_hi, Branch branch) {
    if (!(f_hat >= 0.0)) throw ParameterError("measured fraction must be >= 0");
    if (beta < 0) throw ParameterError("beta must be >= 0");
    if (!(eps_hi > 0.0 && eps_hi <= 1.0)) throw ParameterError("eps_hi must lie in (0, 1]");
    if (static_cast<double>(beta) * eps_hi > kMaxBetaEps) {
        throw ParameterError("beta * eps_hi exceeds the monotone inversion regime");
    }
    if (f_hat == 0.0) return 0.0;
    if (f_hat > branch_fraction(eps_hi, beta, branch)) return std::nullopt;

    double lo = 0.0;
    double hi = eps_hi;
    while (hi - lo > kInversionTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (branch_fraction(mid, beta, branch) < f_hat) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<MagnitudeInterval> confidence_interval(double f_hat, std::optional<long> alpha,
                                                     double kappa, long beta, double eps_hi,
                                                     Branch branch) {
    if (alpha && *alpha < 1) throw ParameterError("alpha must be >= 1");
    if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
    const double half_width = alpha ? kappa / std::sqrt(static_cast<double>(*alpha)) : 0.0;
    const double top = branch_fraction(eps_hi, beta, branch);
    const double f_lo = std::max(0.0, f_hat - half_width);
    if (f_lo > top) return std::nullopt;
    const double f_hi = std::min(f_hat + half_width, top);
    return MagnitudeInterval{*invert_fraction(f_lo, beta, eps_hi, branch),
                             *invert_fraction(f_hi, beta, eps_hi, branch)};
}

double confidence_level(double kappa) noexcept { return 1.0 - 2.0 * std::exp(-2.0 * kappa * kappa); }

RunPlan make_plan(const EstimateOptions& options) {
    RunPlan plan;
    plan.eps0 = options.eps0;
    plan.theta = options.theta;
    plan.kappa = options.kappa;
    plan.mode = options.mode;
    plan.seed = options.seed;
    plan.resimulate = options.resimulate;
    plan.alpha = options.alpha ? *options.alpha : choose_alpha(options.theta);
    plan.beta = options.beta ? *options.beta : choose_beta(options.eps0);
    validate(plan);
    return plan;
}

Sign resolve_sign(const Dataset& d, double mu, const RunPlan& plan) {
    const ThresholdOracle oracle = make_oracle(d, mu);
    return resolve_sign_from(observe(oracle, plan), oracle, d, mu, plan);
}

EstimateRecord eps_est(const Dataset& d, double mu, const EstimateOptions& options) {
    const RunPlan plan = make_plan(options);
    const ThresholdOracle oracle = make_oracle(d, mu);
    const Observation base = observe(oracle, plan);

    Sign sign = Sign::unknown;
    try {
        sign = resolve_sign_from(base, oracle, d, mu, plan);
    } catch (const DegenerateThresholdError&) {
        // Every value is below mu; only the coarse read can say so.
        sign = coarse_sign(oracle, plan);
    }

    const Branch branch = sign == Sign::negative ? Branch::negative : Branch::positive;
    const double f_hat = base.result.f_hat;
    const std::optional<double> point = invert_fraction(f_hat, plan.beta, plan.eps0, branch);
    const auto ci = confidence_interval(f_hat, effective_alpha(plan), plan.kappa, plan.beta,
                                        plan.eps0, branch);

    EstimateRecord rec;
    if (point) {
        rec.verdict = Verdict::ok;
        rec.magnitude = *point;
        rec.ci_lo = ci->lo;
        rec.ci_hi = ci->hi;
    } else {
        rec.verdict = Verdict::eps_exceeds_eps0;
        rec.magnitude = plan.eps0;
        rec.ci_lo = ci ? ci->lo : plan.eps0;
        rec.ci_hi.reset();
    }
    rec.sign = sign;
    rec.eps_hat = static_cast<double>(static_cast<int>(sign)) * rec.magnitude;
    rec.f_hat = f_hat;
    rec.exact_p = base.result.exact_p;
    rec.confidence = plan.mode == Mode::exact ? 1.0 : confidence_level(plan.kappa);
    rec.mu = mu;
    rec.n = d.bits();
    rec.alpha = plan.alpha;
    rec.beta = plan.beta;
    rec.theta = plan.theta;
    rec.kappa = plan.kappa;
    rec.eps0 = plan.eps0;
    rec.mode = plan.mode;
    rec.seed = plan.seed;
    return rec;
}

}  // namespace qmedian
