#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <plateau/core/combinatorics.hpp>
#include <plateau/core/sampling.hpp>
#include <plateau/fitness.hpp>

#include "test_util.hpp"

using namespace plateau;
using namespace plateau::fitness;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

/// All strings of length n, enumerated via their integer codes.
BitString from_code(std::size_t n, std::uint64_t code) { return BitString::from_words(n, {code}); }

} // namespace

TEST(PlateauValue, Examples)
{
    for (std::uint64_t c = 0; c < 16; ++c)
        EXPECT_EQ(plateau_value({4, 0}, from_code(4, c)), 1);
    EXPECT_EQ(plateau_value({4, 2}, bits("0011")), 0);
    EXPECT_EQ(plateau_value({4, 2}, bits("0001")), 0);
    EXPECT_EQ(plateau_value({4, 2}, bits("0000")), 1);
    EXPECT_EQ(plateau_value({4, 2}, bits("1111")), 1);
    EXPECT_EQ(plateau_value({6, 1}, bits("110100")), 0);
    EXPECT_EQ(plateau_value({6, 1}, bits("110110")), 1);
    EXPECT_EQ(plateau_value({6, 1}, bits("001001")), 1);
}

TEST(MajorityValue, Examples)
{
    EXPECT_EQ(majority_value({4, 2}, bits("1111")), 1);
    EXPECT_EQ(majority_value({4, 2}, bits("1110")), 0);
    EXPECT_EQ(majority_value({2, 1}, bits("11")), 1);
    EXPECT_EQ(majority_value({2, 1}, bits("10")), 0);
    EXPECT_EQ(majority_value({2, 1}, bits("00")), 0);
    EXPECT_EQ(majority_value({4, 2}, bits("0000")), 0);
}

TEST(PlateauParams, Validation)
{
    EXPECT_THROW(PlateauParams({5, 1}).validate(), std::invalid_argument);
    EXPECT_THROW(PlateauParams({0, 0}).validate(), std::invalid_argument);
    EXPECT_THROW(PlateauParams({4, 3}).validate(), std::invalid_argument);
    EXPECT_THROW(PlateauParams({4, -1}).validate(), std::invalid_argument);
    EXPECT_NO_THROW(PlateauParams({4, 2}).validate());
    EXPECT_THROW(fitness::plateau({7, 1}), std::invalid_argument);
    EXPECT_THROW(majority({4, 3}), std::invalid_argument);
}

TEST(FitnessErrors, LengthMismatch)
{
    EXPECT_THROW(plateau_value({4, 1}, bits("010")), std::invalid_argument);
    EXPECT_THROW(majority_value({4, 1}, bits("01011")), std::invalid_argument);
    EXPECT_THROW(majority({4, 1})(bits("010")), std::invalid_argument);
    const NeutralityParams np{2, 3, onemax(2)};
    EXPECT_THROW(neutrality_value(np, bits("10101")), std::invalid_argument);
}

TEST(OneMax, Examples)
{
    EXPECT_EQ(onemax_value(bits("0000")), 0);
    EXPECT_EQ(onemax_value(bits("1111")), 4);
    EXPECT_EQ(onemax_value(bits("1010")), 2);
    const auto f = onemax(4);
    EXPECT_EQ(f.max_value(), 4);
    EXPECT_EQ(f(bits("1010")), 2);
    EXPECT_TRUE(f.is_optimal(bits("1111")));
}

TEST(FitnessFunction, MaxValueAttainedAndBounding)
{
    // evaluate(x) <= max_value everywhere, with equality somewhere.
    for (int n = 2; n <= 10; n += 2)
        for (int r = 0; r <= n / 2; ++r)
            for (const auto& f : {fitness::plateau({n, r}), majority({n, r})}) {
                bool attained = false;
                for (std::uint64_t c = 0; c < (1u << n); ++c) {
                    const auto v = f(from_code(static_cast<std::size_t>(n), c));
                    ASSERT_LE(v, f.max_value());
                    attained |= v == f.max_value();
                }
                EXPECT_TRUE(attained) << f.name() << " n=" << n << " r=" << r;
            }
}

TEST(FitnessFunction, LevelTablesMatchEvaluators)
{
    for (int n = 2; n <= 12; n += 2)
        for (int r = 0; r <= n / 2; ++r) {
            const auto p = fitness::plateau({n, r});
            const auto m = majority({n, r});
            ASSERT_NE(p.level_values(), nullptr);
            ASSERT_EQ(p.plateau_params()->r, r);
            for (std::uint64_t c = 0; c < (1u << n); ++c) {
                const auto x = from_code(static_cast<std::size_t>(n), c);
                ASSERT_EQ(p(x), plateau_value({n, r}, x));
                ASSERT_EQ(m(x), majority_value({n, r}, x));
            }
        }
}

TEST(FitnessProperty, MajorityImpliesPlateauOnRandomInstances)
{
    RngStream rng(21, 0);
    for (int i = 0; i < 10000; ++i) {
        const int n = 2 * static_cast<int>(1 + rng.below(60));
        const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2 + 1)));
        const auto x = test::random_bitstring(static_cast<std::size_t>(n), rng);
        if (majority_value({n, r}, x) == 1) {
            ASSERT_EQ(plateau_value({n, r}, x), 1);
        }
    }
}

TEST(FitnessProperty, ComplementSymmetryAndMonotonicity)
{
    RngStream rng(22, 0);
    for (int i = 0; i < 5000; ++i) {
        const int n = 2 * static_cast<int>(1 + rng.below(80));
        const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2 + 1)));
        const auto x = test::random_bitstring(static_cast<std::size_t>(n), rng);
        ASSERT_EQ(plateau_value({n, r}, x), plateau_value({n, r}, x.complement()));
        for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(n); ++b)
            if (!x.test(b)) {
                ASSERT_GE(majority_value({n, r}, flip_bits(x, {b})), majority_value({n, r}, x));
            }
    }
}

TEST(FitnessProperty, OptimumCountsByEnumeration)
{
    for (int n = 2; n <= 16; n += 2)
        for (int r = 0; r <= n / 2; ++r) {
            std::uint64_t maj = 0, pla = 0;
            for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
                const auto x = from_code(static_cast<std::size_t>(n), c);
                const int m = majority_value({n, r}, x);
                const int p = plateau_value({n, r}, x);
                ASSERT_LE(m, p);
                maj += static_cast<std::uint64_t>(m);
                pla += static_cast<std::uint64_t>(p);
            }
            double expect_maj = 0, expect_pla = 0;
            for (int j = 0; j <= n; ++j) {
                const double c = std::round(std::exp(log_binomial(n, j)));
                if (j >= n / 2 + r)
                    expect_maj += c;
                if (std::max(j, n - j) >= n / 2 + r)
                    expect_pla += c;
            }
            EXPECT_EQ(static_cast<double>(maj), expect_maj) << n << " " << r;
            EXPECT_EQ(static_cast<double>(pla), expect_pla) << n << " " << r;
        }
}

// ---------------------------------------------------------------------------
// Neutrality

TEST(Neutrality, Examples)
{
    EXPECT_EQ(neutrality_value({2, 2, onemax(2)}, bits("1101")), 1);
    EXPECT_EQ(neutrality_value({1, 3, onemax(1)}, bits("110")), 1);
    EXPECT_EQ(neutrality_value({1, 3, onemax(1)}, bits("100")), 0);
    // Even width: a tie does not count as a one.
    EXPECT_EQ(neutrality_value({1, 4, onemax(1)}, bits("1100")), 0);
    const auto f = onemax_neutral(3, 2);
    EXPECT_EQ(f.arity(), 6u);
    EXPECT_EQ(f.max_value(), 3);
    EXPECT_EQ(f.kind(), Kind::onemax_neutral);
    EXPECT_EQ(f(bits("111011")), 2);
}

TEST(Neutrality, ParamValidation)
{
    EXPECT_THROW(neutrality({0, 2, onemax(1)}), std::invalid_argument);
    EXPECT_THROW(neutrality({2, 0, onemax(2)}), std::invalid_argument);
    EXPECT_THROW(neutrality({3, 2, onemax(2)}), std::invalid_argument);
}

TEST(NeutralityProperty, PermutingInsideABlockKeepsTheValue)
{
    RngStream rng(31, 0);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t blocks = 1 + rng.below(8);
        const std::size_t k = 1 + rng.below(9);
        const NeutralityParams np{blocks, k, onemax(blocks)};
        const auto x = test::random_bitstring(blocks * k, rng);
        // Random permutation of one block, applied through a bit string rebuild.
        const std::size_t b = rng.below(blocks);
        std::string s = x.to_string();
        std::shuffle(s.begin() + static_cast<std::ptrdiff_t>(b * k), s.begin() + static_cast<std::ptrdiff_t>((b + 1) * k),
                     rng);
        ASSERT_EQ(neutrality_value(np, x), neutrality_value(np, BitString::from_string(s)));
    }
}

TEST(NeutralityProperty, MonotoneUnderZeroToOneFlips)
{
    RngStream rng(32, 0);
    for (int i = 0; i < 3000; ++i) {
        const std::size_t blocks = 1 + rng.below(6);
        const std::size_t k = 1 + rng.below(7);
        const NeutralityParams np{blocks, k, onemax(blocks)};
        const auto x = test::random_bitstring(blocks * k, rng);
        for (std::uint32_t b = 0; b < blocks * k; ++b)
            if (!x.test(b)) {
                ASSERT_GE(neutrality_value(np, flip_bits(x, {b})), neutrality_value(np, x));
            }
    }
}

TEST(SeparableBlock, Examples)
{
    const NeutralityParams np{2, 2, onemax(2)};
    const auto g1 = separable_block_fitness(1, np);
    EXPECT_EQ(g1(bits("1100")), 1);
    EXPECT_EQ(g1(bits("0011")), 0);
    EXPECT_EQ(g1.max_value(), 1);
    EXPECT_EQ(g1.arity(), 4u);
    EXPECT_THROW(separable_block_fitness(0, np), std::out_of_range);
    EXPECT_THROW(separable_block_fitness(3, np), std::out_of_range);
}

TEST(SeparableBlockProperty, LocalityAndSeparability)
{
    RngStream rng(33, 0);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t blocks = 1 + rng.below(6);
        const std::size_t k = 2 * (1 + rng.below(4));
        const NeutralityParams np{blocks, k, onemax(blocks)};
        const auto x = test::random_bitstring(blocks * k, rng);
        const std::size_t idx = 1 + rng.below(blocks);
        const auto g = separable_block_fitness(idx, np);
        const auto outside = static_cast<std::uint32_t>(rng.below(blocks * k));
        if (outside / k != idx - 1) {
            ASSERT_EQ(g(flip_bits(x, {outside})), g(x));
        }
        std::int64_t total = 0;
        for (std::size_t j = 1; j <= blocks; ++j)
            total += separable_block_fitness(j, np)(x);
        ASSERT_EQ(total, neutrality_value(np, x));
    }
}

TEST(Make, Identifiers)
{
    EXPECT_EQ(make("plateau", 6, 1, 0).kind(), Kind::plateau);
    EXPECT_EQ(make("majority", 6, 1, 0).kind(), Kind::majority);
    EXPECT_EQ(make("onemax", 5, 0, 0).arity(), 5u);
    EXPECT_EQ(make("onemax-neutral", 3, 0, 4).arity(), 12u);
    EXPECT_THROW(make("jump", 6, 1, 0), std::invalid_argument);
    EXPECT_THROW(make("onemax-neutral", 3, 0, 0), std::invalid_argument);
}
