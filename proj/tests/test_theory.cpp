#include <gtest/gtest.h>

#include <cmath>

#include <plateau/theory.hpp>

using namespace plateau;
using namespace plateau::theory;

TEST(Lambda, ClosedFormAnchors)
{
    for (int n = 2; n <= 512; n += 2)
        EXPECT_DOUBLE_EQ(lambda(n, 1), 3.0) << n;
    EXPECT_DOUBLE_EQ(lambda(4, 2), 9.0);
    EXPECT_DOUBLE_EQ(lambda(100, 2), 612.0 / 388.0);
    EXPECT_NEAR(lambda(100, 2), 1.5773, 1e-4);
    // r = 2: 6(n+2)/(6(n-2)-2n) = 6(n+2)/(4n-12) -> 3/2.
    EXPECT_NEAR(lambda(2'000'000, 2), 1.5, 1e-5);
}

TEST(Lambda, Errors)
{
    EXPECT_THROW(lambda(4, 0), std::invalid_argument);
    EXPECT_THROW(lambda(5, 1), std::invalid_argument);
    EXPECT_THROW(lambda(4, 3), std::invalid_argument);
    EXPECT_THROW(drift_delta(4, 0), std::invalid_argument);
}

TEST(LambdaProperty, AboveOneWithDenominatorAtLeastN)
{
    for (int n = 2; n <= 512; n += 2) {
        EXPECT_EQ(lambda_denominator(n, 1), static_cast<double>(n));
        EXPECT_EQ(lambda_denominator(n, n / 2), static_cast<double>(n));
        for (int r = 1; r <= n / 2; ++r) {
            ASSERT_GE(lambda_denominator(n, r), static_cast<double>(n)) << n << " " << r;
            ASSERT_GT(lambda(n, r), 1.0) << n << " " << r;
        }
    }
}

TEST(Potential, Anchors)
{
    EXPECT_DOUBLE_EQ(potential_h(4, 2, 3).value, 72.0);
    EXPECT_DOUBLE_EQ(potential_h(4, 2, 4).value, 0.0);
    EXPECT_DOUBLE_EQ(potential_g(4, 2, 3).value, 72.0);
    for (int n = 4; n <= 64; n += 4)
        for (int r = 1; r <= n / 2; ++r) {
            const double lam = lambda(n, r);
            EXPECT_NEAR(potential_h(n, r, n / 2).value, std::pow(lam, r) - 1.0, 1e-12 * std::pow(lam, r));
            EXPECT_EQ(potential_h(n, r, n / 2 + r).value, 0.0);
            EXPECT_EQ(potential_h(n, r, n).value, 0.0);
        }
    EXPECT_THROW(potential_h(4, 2, 1), std::out_of_range);
    EXPECT_THROW(potential_h(4, 2, 5), std::out_of_range);
}

TEST(PlateauBound, Anchors)
{
    EXPECT_DOUBLE_EQ(plateau_bound(4, 1, 2).value, 3.0);
    EXPECT_NEAR(plateau_bound(4, 2, 2).value, 60.0, 1e-12 * 60);
    EXPECT_EQ(plateau_bound(4, 2, 4).value, 0.0);
    EXPECT_EQ(plateau_bound(10, 0, 5).value, 0.0);
    EXPECT_THROW(plateau_bound(4, 2, 1), std::out_of_range);
}

TEST(AsymBound, Anchors)
{
    EXPECT_DOUBLE_EQ(asym_bound(2, 1).value, 7.0);
    EXPECT_EQ(asym_bound(6, 0).value, 0.0);
    for (int k = 2; k <= 40; k += 2)
        EXPECT_NEAR(asym_bound(k, 1).value, block_bound(k), 1e-12) << k;
    // For r = 2 the full bound carries the linear term n(1 + ln 2)/2, so only
    // its potential part stays in a constant range as n grows.
    EXPECT_GT(asym_bound(10000, 2).value / asym_bound(100, 2).value, 2.0);
    auto potential_part = [](int n) { return asym_bound(n, 2).value - n * (1 + std::log(2.0)) / 2; };
    const double pa = potential_part(100), pb = potential_part(1000), pc = potential_part(10000);
    EXPECT_LT(std::max({pa, pb, pc}) / std::min({pa, pb, pc}), 2.0);
}

TEST(BoundOverflow, ReportedAsInfinity)
{
    const auto b = plateau_bound(4096, 2048, 2048);
    EXPECT_TRUE(b.overflow);
    EXPECT_TRUE(std::isinf(b.value));
    const auto a = asym_bound(4096, 2048);
    EXPECT_TRUE(a.overflow);
    EXPECT_FALSE(asym_bound(4096, 10).overflow);
    const auto set = bounds(4096, 2048);
    EXPECT_TRUE(set.plateau_bound_center.overflow);
    EXPECT_GT(set.lambda, 1.0);
}

TEST(MajorityOfOnesBound, Anchors)
{
    EXPECT_DOUBLE_EQ(majority_of_ones_bound(2, 1), 1.0);
    EXPECT_DOUBLE_EQ(majority_of_ones_bound(10, 1), 5.0);
    EXPECT_NEAR(majority_of_ones_bound(100, 50), 50 * (1 + std::log(50.0)), 1e-12);
    EXPECT_NEAR(majority_of_ones_bound(100, 50), 245.6, 0.05);
    for (int n = 4; n <= 200; n += 2)
        for (int d = 1; d < n / 2; ++d)
            ASSERT_GT(majority_of_ones_bound(n, d + 1), majority_of_ones_bound(n, d));
    EXPECT_THROW(majority_of_ones_bound(10, 0), std::invalid_argument);
    EXPECT_THROW(majority_of_ones_bound(10, 6), std::invalid_argument);
}

TEST(DriftDelta, Anchors)
{
    EXPECT_NEAR(drift_delta(4, 2), 4.0 / 3.0, 1e-15);
    for (int n = 2; n <= 200; n += 2) {
        EXPECT_NEAR(drift_delta(n, 1), 2.0 / 3.0, 1e-15);
        for (int r = 1; r <= n / 2; ++r)
            ASSERT_LE(drift_delta(n, r), lambda(n, r) - 1.0);
    }
}

TEST(BlockBound, Values)
{
    EXPECT_DOUBLE_EQ(block_bound(2), 7.0);
    EXPECT_DOUBLE_EQ(block_bound(10), 11.0);
    EXPECT_THROW(block_bound(3), std::invalid_argument);
    EXPECT_THROW(block_bound(0), std::invalid_argument);
}

TEST(Regime, ConstantPlateauBoundForRadiusTwo)
{
    // Center bound for r = 2 is 3r(lambda^2 - 1)/(lambda - 1) = 6(lambda + 1) -> 15.
    const double ref = plateau_bound(10000, 2, 5000).value;
    for (int n : {100, 1000, 10000}) {
        const double v = plateau_bound(n, 2, n / 2).value;
        EXPECT_NEAR(v, 6.0 * (lambda(n, 2) + 1.0), 1e-12 * v);
        EXPECT_LE(std::fabs(v - ref), 0.1 * ref) << n;
        EXPECT_LE(std::fabs(v - 15.0), 0.1 * 15.0) << n;
    }
}

TEST(BoundSet, Fields)
{
    const auto b = bounds(4, 2);
    EXPECT_DOUBLE_EQ(b.lambda, 9.0);
    EXPECT_NEAR(b.drift_delta, 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(b.plateau_bound_center.value, 60.0, 1e-12 * 60);
    const auto z = bounds(6, 0);
    EXPECT_TRUE(std::isnan(z.lambda));
    EXPECT_EQ(z.plateau_bound_center.value, 0.0);
    EXPECT_EQ(z.asym_bound.value, 0.0);
}
