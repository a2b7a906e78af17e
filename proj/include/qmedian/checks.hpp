#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmedian/state_vector.hpp"

namespace qmedian {

struct CheckOutcome {
    std::string name;
    std::string claim;
    double max_error = 0.0;
};

// Numerical verification of the transform and loop identities at register
// size n: unitarity of F, D, S and phase rotations, F involution, FTF = D and
// FRF = S against dense matrices (n capped at 5 for those), flat preparation
// amplitudes, the two-level diffusion and loop maps, conservation, and the
// closed form against both the simulator and the recurrence.
// Throws SizeError unless 1 <= n <= max_bits.
std::vector<CheckOutcome> run_identity_checks(int n, std::uint64_t seed,
                                             int max_bits = kDefaultMaxBits);

// True iff every max_error is strictly below tol.
bool all_within(std::span<const CheckOutcome> outcomes, double tol) noexcept;

// Unit state with independent Gaussian components.
StateVector random_unit_state(int n, std::uint64_t seed);

}  // namespace qmedian
