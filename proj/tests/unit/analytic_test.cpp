#include "qmedian/analytic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmedian/errors.hpp"

using namespace qmedian::analytic;

namespace {

void expect_complex_near(Complex got, Complex want, double tol) {
    EXPECT_NEAR(got.real(), want.real(), tol);
    EXPECT_NEAR(got.imag(), want.imag(), tol);
}

// Independent reference: iterate the 2x2 recurrence from the post-shift state.
TwoAmpState iterate(double eps, long r) {
    TwoAmpState s = post_shift(eps);
    for (long i = 0; i < r; ++i) s = loop_step(s);
    return s;
}

}  // namespace

TEST(PostShift, Examples) {
    const TwoAmpState zero = post_shift(0.0);
    EXPECT_EQ(zero.k, Complex(0.0, 0.0));
    EXPECT_EQ(zero.l, Complex(1.0, 1.0));
    const TwoAmpState s = post_shift(0.125);
    EXPECT_EQ(s.k, Complex(0.125, 0.0));
    EXPECT_EQ(s.l, Complex(1.125, 1.0));
    for (double e : {-0.5, 0.2, 0.125}) EXPECT_NEAR(conserved_quantity(post_shift(e)), 2.0, 1e-15);
    EXPECT_THROW(post_shift(1.5), qmedian::ParameterError);
}

TEST(DiffusionPair, BasisPairs) {
    for (double e : {-0.3, 0.0, 0.125, 0.9}) {
        const TwoAmpState a = diffusion_pair({1.0, 0.0, e});
        expect_complex_near(a.k, e, 1e-15);
        expect_complex_near(a.l, 1.0 + e, 1e-15);
        const TwoAmpState b = diffusion_pair({0.0, 1.0, e});
        expect_complex_near(b.k, 1.0 - e, 1e-15);
        expect_complex_near(b.l, -e, 1e-15);
        const TwoAmpState u = diffusion_pair({1.0, 1.0, e});
        expect_complex_near(u.k, 1.0, 1e-15);
        expect_complex_near(u.l, 1.0, 1e-15);
    }
}

TEST(LoopStep, Examples) {
    const TwoAmpState a = loop_step({1.0, 0.0, 0.1});
    expect_complex_near(a.k, 0.98, 1e-15);
    expect_complex_near(a.l, -0.22, 1e-15);

    const TwoAmpState id = loop_step({Complex{0.3, -0.2}, Complex{0.7, 0.1}, 0.0});
    EXPECT_EQ(id.k, Complex(0.3, -0.2));
    EXPECT_EQ(id.l, Complex(0.7, 0.1));

    // 47/128 + 7/32 i and 135/128 + 31/32 i in exact arithmetic.
    const TwoAmpState one = loop_step(post_shift(0.125));
    EXPECT_EQ(one.k, Complex(0.3671875, 0.21875));
    EXPECT_EQ(one.l, Complex(1.0546875, 0.96875));
    EXPECT_EQ(conserved_quantity(one), 2.0);
}

TEST(LoopStep, IsTwoDiffusionsWithPhaseFlips) {
    for (double e : {-0.4, 0.01, 0.125, 0.6}) {
        const TwoAmpState start{Complex{0.3, 0.1}, Complex{-0.2, 0.8}, e};
        TwoAmpState s{-start.k, start.l, e};
        s = diffusion_pair(s);
        s.l = -s.l;
        s = diffusion_pair(s);
        const TwoAmpState direct = loop_step(start);
        expect_complex_near(direct.k, s.k, 1e-15);
        expect_complex_near(direct.l, s.l, 1e-15);
    }
}

TEST(LoopStep, LinearInstances) {
    for (double e : {-0.2, 0.05, 0.125}) {
        const TwoAmpState a = loop_step({1.0, 0.0, e});
        expect_complex_near(a.k, 1 - 2 * e * e, 1e-15);
        expect_complex_near(a.l, -2 * e - 2 * e * e, 1e-15);
        const TwoAmpState b = loop_step({0.0, 1.0, e});
        expect_complex_near(b.k, 2 * e - 2 * e * e, 1e-15);
        expect_complex_near(b.l, 1 - 2 * e * e, 1e-15);
    }
}

TEST(ConservedQuantity, InvariantUnderLoop) {
    for (double e : {0.0, 0.125, -0.125, 0.0625, -0.0625}) {
        TwoAmpState s = post_shift(e);
        EXPECT_NEAR(conserved_quantity(s), 2.0, 1e-15);
        for (int i = 0; i < 1000; ++i) {
            s = loop_step(s);
            ASSERT_NEAR(conserved_quantity(s), 2.0, 1e-13) << "eps=" << e << " i=" << i;
            ASSERT_NEAR(conserved_quantity(diffusion_pair(s)), 2.0, 1e-13);
        }
    }
    for (double e : {-0.7, 0.0, 0.3}) EXPECT_NEAR(conserved_quantity({1.0, Complex{0.0, 1.0}, e}), 2.0, 1e-15);
}

TEST(LoopAngles, Identities) {
    for (double e : {-0.9, -0.25, -0.01, 0.001, 0.125, 0.5, 0.99}) {
        const LoopAngles a = loop_angles(e);
        EXPECT_NEAR(a.gamma * std::sin(a.phi), 2 * e - 2 * e * e, 1e-14) << e;
        EXPECT_NEAR(std::cos(a.phi), 1 - 2 * e * e, 1e-15) << e;
        EXPECT_NEAR(a.gamma * a.gamma, (2 * e - 2 * e * e) / (2 * e + 2 * e * e), 1e-13) << e;
        EXPECT_EQ(std::signbit(a.phi), std::signbit(e));
    }
    const LoopAngles z = loop_angles(0.0);
    EXPECT_EQ(z.phi, 0.0);
    EXPECT_EQ(z.gamma, 1.0);
    EXPECT_EQ(z.tau, 0.0);
}

TEST(LoopAngles, SinusoidalParametrization) {
    // Real part follows (gamma A sin(r phi + tau), A cos(r phi + tau)), the
    // imaginary part (gamma sin(r phi), cos(r phi)).
    for (double e : {-0.2, 0.03, 0.125}) {
        const LoopAngles a = loop_angles(e);
        for (long r = 0; r <= 40; ++r) {
            const TwoAmpState s = iterate(e, r);
            const double t = static_cast<double>(r) * a.phi;
            EXPECT_NEAR(s.k.real(), a.gamma * a.amplitude * std::sin(t + a.tau), 1e-12);
            EXPECT_NEAR(s.l.real(), a.amplitude * std::cos(t + a.tau), 1e-12);
            EXPECT_NEAR(s.k.imag(), a.gamma * std::sin(t), 1e-12);
            EXPECT_NEAR(s.l.imag(), std::cos(t), 1e-12);
        }
    }
}

TEST(ClosedForm, Examples) {
    EXPECT_EQ(k_closed_form(0.3, 0), Complex(0.3, 0.0));
    expect_complex_near(k_closed_form(0.125, 1), Complex(0.3671875, 0.21875), 1e-14);
    const double approx = k_small_eps_approx(0.001, 50);
    const double mag = std::abs(k_closed_form(0.001, 50));
    EXPECT_GE(mag, 0.97 * approx);
    EXPECT_LE(mag, 1.07 * approx);
    EXPECT_THROW(k_closed_form(0.1, -1), qmedian::ParameterError);
}

TEST(ClosedForm, MatchesRecurrenceOnGrid) {
    double worst = 0.0;
    for (int j = 1; j <= 51; ++j) {
        for (double sgn : {1.0, -1.0}) {
            const double e = sgn * 2.0 * j / 1024.0;
            TwoAmpState s = post_shift(e);
            for (long r = 0; r <= 200; ++r) {
                if (r > 0) s = loop_step(s);
                worst = std::max(worst, std::abs(s.k - k_closed_form(e, r)));
                worst = std::max(worst, std::abs(s.l - l_closed_form(e, r)));
            }
        }
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(ClosedForm, NegativeImbalanceMagnitudes) {
    for (double e : {-0.001, -0.03, -0.2}) {
        for (long r : {1L, 7L, 60L}) {
            EXPECT_NEAR(std::abs(k_closed_form(e, r)), std::abs(iterate(e, r).k), 1e-12);
        }
    }
}

TEST(ClosedForm, FullImbalanceEndpoints) {
    for (double e : {1.0, -1.0}) {
        for (long r = 0; r <= 12; ++r) {
            const TwoAmpState s = iterate(e, r);
            expect_complex_near(k_closed_form(e, r), s.k, 1e-9);
            expect_complex_near(l_closed_form(e, r), s.l, 1e-9);
        }
    }
}

TEST(SmallEpsApprox, Examples) {
    EXPECT_DOUBLE_EQ(k_small_eps_approx(0.001, 50), 0.1414213562373095);
    EXPECT_EQ(k_small_eps_approx(0.3, 0), 0.0);
    const double ratio = std::abs(k_closed_form(0.001, 10)) / k_small_eps_approx(0.001, 10);
    EXPECT_GE(ratio, 0.97);
    EXPECT_LE(ratio, 1.07);
    EXPECT_NEAR(ratio, 1.0247457197192553, 1e-12);
}

TEST(SmallEpsApprox, GrowthBand) {
    for (double e : {0.01, 0.005, 0.002, 0.001}) {
        const long r_max = static_cast<long>(0.05 / e);
        for (long r = 5; r <= r_max; ++r) {
            const double ratio = std::abs(k_closed_form(e, r)) / k_small_eps_approx(e, r);
            ASSERT_GE(ratio, 0.95) << "eps=" << e << " r=" << r;
            ASSERT_LE(ratio, 1.12) << "eps=" << e << " r=" << r;
        }
    }
}

TEST(PredictedFraction, Examples) {
    for (long b : {0L, 1L, 10L, 100L}) EXPECT_EQ(predicted_fraction(0.0, b), 0.0);
    // 26937 / 2^18 exactly.
    EXPECT_NEAR(predicted_fraction(0.125, 1), 26937.0 / 262144.0, 1e-15);
    EXPECT_NEAR(predicted_fraction(0.2, 0), 0.024, 1e-15);
}

TEST(PredictedFraction, NearlyEven) {
    // |f(-e) - f(e)| shrinks like e^3 at fixed beta * e.
    double previous = 0.0;
    for (double e : {0.04, 0.02, 0.01}) {
        const long beta = static_cast<long>(0.04 / e);
        const double gap = std::abs(predicted_fraction(e, beta) - predicted_fraction(-e, beta));
        if (previous > 0.0) EXPECT_LT(gap, previous / 1.9);
        previous = gap;
    }
}
