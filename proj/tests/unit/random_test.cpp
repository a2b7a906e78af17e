#include "qmedian/random.hpp"

#include <gtest/gtest.h>

using qmedian::SplitMix64;

// Reference outputs computed with an independent big-integer implementation.
TEST(SplitMix64, ReferenceTraceSeedZero) {
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
}

TEST(SplitMix64, ReferenceTraceSeedOne) {
    SplitMix64 rng(1);
    EXPECT_EQ(rng.next(), 0x910A2DEC89025CC1ULL);
    EXPECT_EQ(rng.next(), 0xBEEB8DA1658EEC67ULL);
    EXPECT_EQ(rng.next(), 0xF893A2EEFB32555EULL);
}

TEST(SplitMix64, UniformUsesTop53Bits) {
    SplitMix64 rng(1);
    EXPECT_EQ(rng.uniform(), 0.5665615751722809);
    SplitMix64 again(1);
    EXPECT_EQ(again.uniform(), static_cast<double>(0x910A2DEC89025CC1ULL >> 11) * 0x1.0p-53);
}

TEST(SplitMix64, UniformStaysInUnitInterval) {
    SplitMix64 rng(12345);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(SplitMix64, DerivedSeedIsFirstOutputOfXoredSeed) {
    EXPECT_EQ(qmedian::derive_seed(1, 0), 0x910A2DEC89025CC1ULL);
    EXPECT_EQ(qmedian::derive_seed(0, 1), 0x910A2DEC89025CC1ULL);
    EXPECT_NE(qmedian::derive_seed(7, 1), qmedian::derive_seed(7, 2));
}
