#include "qmedian/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qmedian/errors.hpp"

namespace qmedian::analytic {

namespace {

void check_eps(double eps) {
    if (!(std::abs(eps) <= 1.0)) throw ParameterError("imbalance must lie in [-1, 1]");
}

void check_r(long r) {
    if (r < 0) throw ParameterError("iteration count must be non-negative");
}

// sin(r phi) / sin(phi), continuous through phi = 0 and phi = +-pi.
double sin_ratio(long r, double phi) {
    const double s = std::sin(phi);
    if (std::abs(s) > 1e-300 && std::abs(std::abs(phi) - std::numbers::pi) > 1e-12) {
        return std::sin(static_cast<double>(r) * phi) / s;
    }
    if (std::abs(phi) < 1.0) return static_cast<double>(r);
    return (r % 2 == 0 ? -1.0 : 1.0) * static_cast<double>(r);
}

}  // namespace

LoopAngles loop_angles(double eps) {
    check_eps(eps);
    LoopAngles a{};
    // 2 asin(eps) has cos = 1 - 2 eps^2 and carries the sign of eps, without
    // the cancellation arccos suffers near 1.
    a.phi = 2.0 * std::asin(eps);
    if (eps == -1.0) {
        a.gamma = std::numeric_limits<double>::infinity();
        a.tau = 0.0;
        a.amplitude = 0.0;
        return a;
    }
    a.gamma = std::sqrt((1.0 - eps) / (1.0 + eps));
    if (eps == 1.0) {
        a.tau = std::numbers::pi / 2;
        a.amplitude = std::numeric_limits<double>::infinity();
        return a;
    }
    const double k_over_gamma = eps / a.gamma;
    a.tau = std::atan2(k_over_gamma, 1.0 + eps);
    a.amplitude = std::hypot(k_over_gamma, 1.0 + eps);
    return a;
}

TwoAmpState post_shift(double eps) {
    check_eps(eps);
    return {Complex{eps, 0.0}, Complex{1.0 + eps, 1.0}, eps};
}

TwoAmpState diffusion_pair(const TwoAmpState& s) noexcept {
    const double e = s.eps;
    return {e * s.k + (1.0 - e) * s.l, (1.0 + e) * s.k - e * s.l, e};
}

TwoAmpState loop_step(const TwoAmpState& s) noexcept {
    const double e = s.eps;
    const double c = 1.0 - 2.0 * e * e;
    return {c * s.k + (2.0 * e - 2.0 * e * e) * s.l,
            -(2.0 * e + 2.0 * e * e) * s.k + c * s.l, e};
}

double conserved_quantity(const TwoAmpState& s) noexcept {
    return (1.0 + s.eps) * std::norm(s.k) + (1.0 - s.eps) * std::norm(s.l);
}

Complex k_closed_form(double eps, long r) {
    check_eps(eps);
    check_r(r);
    const LoopAngles a = loop_angles(eps);
    const double rphi = static_cast<double>(r) * a.phi;
    const Complex start_l{1.0 + eps, 1.0};
    if (std::abs(eps) < 1.0) {
        return a.gamma * start_l * std::sin(rphi) + eps * std::cos(rphi);
    }
    // gamma sin(r phi) degenerates at |eps| = 1; use (2 eps - 2 eps^2) sin(r phi)/sin(phi).
    return (2.0 * eps - 2.0 * eps * eps) * sin_ratio(r, a.phi) * start_l + eps * std::cos(rphi);
}

Complex l_closed_form(double eps, long r) {
    check_eps(eps);
    check_r(r);
    const LoopAngles a = loop_angles(eps);
    const double rphi = static_cast<double>(r) * a.phi;
    const Complex start_l{1.0 + eps, 1.0};
    if (std::abs(eps) < 1.0) {
        return start_l * std::cos(rphi) - (eps / a.gamma) * std::sin(rphi);
    }
    return start_l * std::cos(rphi) - eps * (2.0 * eps + 2.0 * eps * eps) * sin_ratio(r, a.phi);
}

double k_small_eps_approx(double eps, long r) {
    check_r(r);
    if (eps < 0.0) throw ParameterError("small-imbalance approximation needs eps >= 0");
    return 2.0 * std::numbers::sqrt2 * static_cast<double>(r) * eps;
}

double predicted_fraction(double eps, long beta) {
    return 0.5 * (1.0 + eps) * std::norm(k_closed_form(eps, beta));
}

}  // namespace qmedian::analytic
