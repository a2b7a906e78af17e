#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "qmedian/dataset.hpp"
#include "qmedian/driver.hpp"

namespace qmedian {

enum class Sign { negative = -1, unknown = 0, positive = 1 };

// Which half-line of eps the forward map is inverted on. The map is not even
// in eps, so once the sign is known the matching branch gives the exact
// magnitude.
enum class Branch { positive, negative };

enum class Verdict {
    ok,
    eps_exceeds_eps0,  // measured fraction lies beyond the prior bracket
};

std::string_view to_string(Verdict v) noexcept;

inline constexpr double kInversionTolerance = 1e-12;

// Largest beta * eps_hi for which inversion is attempted; the forward map is
// strictly monotone well beyond this on both branches.
inline constexpr double kMaxBetaEps = 0.25;

// Solves predicted_fraction(+-eps, beta) = f_hat for eps in [0, eps_hi] by
// bisection to width 1e-12. Returns nullopt when f_hat exceeds the value at
// eps_hi (the magnitude is likely beyond the bracket). Throws ParameterError
// for negative/NaN f_hat, beta < 0, eps_hi outside (0, 1], or
// beta * eps_hi > kMaxBetaEps.
std::optional<double> invert_fraction(double f_hat, long beta, double eps_hi,
                                      Branch branch = Branch::positive);

struct MagnitudeInterval {
    double lo;
    double hi;
};

// Hoeffding interval: invert f_hat -/+ kappa/sqrt(alpha), clamped to
// [0, f(eps_hi)]. `alpha` empty means exact mode (zero half-width). Returns
// nullopt only when even the lower fraction exceeds f(eps_hi).
std::optional<MagnitudeInterval> confidence_interval(double f_hat, std::optional<long> alpha,
                                                     double kappa, long beta, double eps_hi,
                                                     Branch branch = Branch::positive);

// Probability that the measured fraction stays inside its kappa band:
// 1 - 2 exp(-2 kappa^2).
double confidence_level(double kappa) noexcept;

struct EstimateOptions {
    double eps0 = 0.1;
    double theta = 0.1;
    double kappa = 2.0;
    Mode mode = Mode::exact;
    std::uint64_t seed = 0;
    std::optional<long> alpha;  // overrides choose_alpha(theta)
    std::optional<long> beta;   // overrides choose_beta(eps0)
    bool resimulate = false;
};

RunPlan make_plan(const EstimateOptions& options);

struct EstimateRecord {
    double eps_hat = 0.0;    // signed; 0 when the sign is unknown
    double magnitude = 0.0;  // |eps_hat| (eps0 when the verdict is eps_exceeds_eps0)
    double ci_lo = 0.0;
    std::optional<double> ci_hi;  // empty means unbounded above
    Sign sign = Sign::unknown;
    Verdict verdict = Verdict::ok;
    double f_hat = 0.0;
    double exact_p = 0.0;
    double confidence = 1.0;
    double mu = 0.0;
    int n = 0;
    long alpha = 0;
    long beta = 0;
    double theta = 0.0;
    double kappa = 0.0;
    double eps0 = 0.0;
    Mode mode = Mode::exact;
    std::uint64_t seed = 0;

    friend bool operator==(const EstimateRecord&, const EstimateRecord&) = default;
};

// Re-estimates just above the threshold (at the next value not below mu, with
// that value counted below) and compares magnitudes: a larger magnitude means
// eps > 0, a smaller one eps < 0, overlapping intervals or a zero estimate mean
// unknown. Throws DegenerateThresholdError if no dataset value is >= mu.
Sign resolve_sign(const Dataset& d, double mu, const RunPlan& plan);

// Full signed estimate of the imbalance at threshold mu.
EstimateRecord eps_est(const Dataset& d, double mu, const EstimateOptions& options);

}  // namespace qmedian
