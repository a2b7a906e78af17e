#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qmedian/dataset.hpp"
#include "qmedian/state_vector.hpp"

namespace qmedian {

enum class Mode {
    exact,    // read the below-threshold probability off the final state
    sampled,  // measure alpha times
};

std::string_view to_string(Mode mode) noexcept;
// Accepts "exact", "sample" and "sampled". Throws ParameterError otherwise.
Mode parse_mode(std::string_view text);

struct RunPlan {
    double eps0 = 0.1;    // prior bound on |eps|, in (0, 0.1]
    double theta = 0.1;   // relative precision target
    double kappa = 2.0;   // confidence multiplier
    long alpha = 100;     // measurements per experiment
    long beta = 1;        // amplification loop iterations
    Mode mode = Mode::exact;
    std::uint64_t seed = 0;
    // Re-prepare the register for every measurement instead of sampling the
    // final state repeatedly. Same outcomes, alpha times the cost.
    bool resimulate = false;
    bool record_outcomes = false;
};

// Throws ParameterError when a field is outside its range.
void validate(const RunPlan& plan);

struct ExperimentResult {
    double f_hat = 0.0;    // fraction of measurements below threshold (= exact_p in exact mode)
    double exact_p = 0.0;  // below-threshold probability of the final state
    long alpha = 0;        // measurements taken; 0 in exact mode
    long beta = 0;
    std::vector<BasisIndex> outcomes;

    friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

// Uniform register, phase pi/2 on the above states, then the shift transform.
StateVector prepare(const ThresholdOracle& oracle);

// `beta` passes of: phase pi on below, diffusion, phase pi on above, diffusion.
void amplification_loop(StateVector& state, const ThresholdOracle& oracle, long beta);

// Throws NumericalError if the final norm drifts from 1 by more than 1e-6.
ExperimentResult run_experiment(const ThresholdOracle& oracle, const RunPlan& plan);

// Below-threshold fraction of the unamplified uniform register, (1 + eps)/2.
// Exact mode returns it directly; sampled mode measures `alpha` times.
double measure_uniform_fraction(const ThresholdOracle& oracle, Mode mode, long alpha,
                                std::uint64_t seed);

// beta = max(1, floor(scale / eps0)); the default scale 1/20 keeps
// beta |eps| <= 0.05 for |eps| <= eps0.
long choose_beta(double eps0, double scale = 1.0 / 20.0);

// alpha = ceil(multiplier / theta^2).
long choose_alpha(double theta, double multiplier = 1.0);

}  // namespace qmedian
