#pragma once

#include <complex>

namespace qmedian::analytic {

using Complex = std::complex<double>;

// Common amplitude k of the below-threshold states and l of the others, in the
// convention where squared amplitudes sum to N (multiply unit-norm simulator
// amplitudes by sqrt(N) to compare).
struct TwoAmpState {
    Complex k;
    Complex l;
    double eps;
};

// Parameters of the closed-form loop solution
//   k_r = gamma A sin(r phi + tau),  l_r = A cos(r phi + tau)
// for a real starting pair. tau and A here describe the real part of the
// post-shift state (k, l) = (eps, 1 + eps); the imaginary part (0, 1) has
// tau = 0 and A = 1.
struct LoopAngles {
    double phi;    // signed: cos(phi) = 1 - 2 eps^2, sin(phi) has the sign of eps
    double gamma;  // sqrt((1 - eps) / (1 + eps)), 1 at eps = 0
    double tau;
    double amplitude;
};

// Throws ParameterError for |eps| > 1. gamma is +inf at eps = -1.
LoopAngles loop_angles(double eps);

// State right after the shift transform: (eps, (1 + eps) + i).
TwoAmpState post_shift(double eps);

// One diffusion transform: k' = eps k + (1 - eps) l, l' = (1 + eps) k - eps l.
TwoAmpState diffusion_pair(const TwoAmpState& s) noexcept;

// One pass of phase(below) -> D -> phase(above) -> D:
//   k' =  k (1 - 2 eps^2) + l (2 eps - 2 eps^2)
//   l' = -k (2 eps + 2 eps^2) + l (1 - 2 eps^2)
TwoAmpState loop_step(const TwoAmpState& s) noexcept;

// (1 + eps)|k|^2 + (1 - eps)|l|^2.
double conserved_quantity(const TwoAmpState& s) noexcept;

// Below amplitude after r loop iterations started from post_shift(eps):
//   k_r = gamma (1 + eps + i) sin(r phi) + eps cos(r phi).
Complex k_closed_form(double eps, long r);

// Companion above amplitude: l_r = (1 + eps + i) cos(r phi) - (eps / gamma) sin(r phi).
Complex l_closed_form(double eps, long r);

// Small-imbalance growth 2 sqrt(2) r eps.
double k_small_eps_approx(double eps, long r);

// Probability of measuring a below-threshold state after `beta` loops:
// (1/2)(1 + eps)|k_beta|^2.
double predicted_fraction(double eps, long beta);

}  // namespace qmedian::analytic
