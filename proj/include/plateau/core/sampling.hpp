#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bitstring.hpp"
#include "rng.hpp"

namespace plateau {

/// Draws uniformly random subsets of size `ell` from [0, n).
///
/// Two regimes: for ell <= n/64, indices are drawn independently and
/// duplicates are rejected against a bitmask; otherwise a partial
/// Fisher-Yates shuffle runs over a persistent index permutation. Any
/// starting permutation yields a uniform ell-prefix, so the permutation is
/// never reset. Either way a draw costs O(ell) expected time.
class SubsetSampler {
public:
    SubsetSampler(std::size_t n, std::size_t ell)
        : n_(n)
        , ell_(ell)
    {
        if (ell == 0 || ell > n)
            throw std::invalid_argument("SubsetSampler: subset size " + std::to_string(ell)
                                        + " outside [1, " + std::to_string(n) + "]");
        if (n > UINT32_MAX)
            throw std::invalid_argument("SubsetSampler: n exceeds 32-bit index range");
        rejection_ = ell * 64 <= n;
        if (rejection_) {
            marks_.assign((n + 63) / 64, 0);
            out_.resize(ell);
        } else {
            perm_.resize(n);
            std::iota(perm_.begin(), perm_.end(), std::uint32_t{0});
        }
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t ell() const noexcept { return ell_; }

    /// The returned view is valid until the next call.
    std::span<const std::uint32_t> draw(RngStream& rng)
    {
        if (rejection_) {
            std::size_t filled = 0;
            while (filled < ell_) {
                const auto i = static_cast<std::uint32_t>(rng.below(n_));
                std::uint64_t& w = marks_[i / 64];
                const std::uint64_t bit = std::uint64_t{1} << (i % 64);
                if (w & bit)
                    continue;
                w |= bit;
                out_[filled++] = i;
            }
            for (auto i : out_)
                marks_[i / 64] = 0;
            return out_;
        }
        for (std::size_t i = 0; i < ell_; ++i) {
            const std::size_t j = i + rng.below(n_ - i);
            std::swap(perm_[i], perm_[j]);
        }
        return {perm_.data(), ell_};
    }

private:
    std::size_t n_;
    std::size_t ell_;
    bool rejection_;
    std::vector<std::uint64_t> marks_;
    std::vector<std::uint32_t> out_;
    std::vector<std::uint32_t> perm_;
};

/// One uniformly random `ell`-subset of [0, n).
inline std::vector<std::uint32_t> sample_uniform_subset(std::size_t n, std::size_t ell, RngStream& rng)
{
    SubsetSampler sampler(n, ell);
    auto s = sampler.draw(rng);
    return {s.begin(), s.end()};
}

namespace init {

/// Each of the 2^n strings equally likely.
struct Uniform {};

/// Uniform over strings rejected by nothing but `is_optimal`. When the
/// predicate is left empty the algorithm driver binds it to the fitness
/// being optimized.
struct UniformNonOptimal {
    std::function<bool(const BitString&)> is_optimal;
    std::size_t max_attempts = 1'000'000;
};

/// Uniform over strings with exactly `ones` one-bits.
struct FixedOnes {
    std::size_t ones;
};

/// Always `x`.
struct Point {
    BitString x;
};

} // namespace init

using InitDistribution = std::variant<init::Uniform, init::UniformNonOptimal, init::FixedOnes, init::Point>;

namespace detail {

inline BitString uniform_bitstring(std::size_t n, RngStream& rng)
{
    std::vector<std::uint64_t> words((n + 63) / 64);
    for (auto& w : words)
        w = rng();
    return BitString::from_words(n, std::move(words));
}

} // namespace detail

/// Draws an initial individual of length `n` from `dist`.
inline BitString sample_bitstring(std::size_t n, const InitDistribution& dist, RngStream& rng)
{
    struct Visitor {
        std::size_t n;
        RngStream& rng;

        BitString operator()(const init::Uniform&) const { return detail::uniform_bitstring(n, rng); }

        BitString operator()(const init::UniformNonOptimal& d) const
        {
            if (!d.is_optimal)
                throw std::invalid_argument("sample_bitstring: UniformNonOptimal needs an optimality predicate");
            for (std::size_t attempt = 0; attempt < d.max_attempts; ++attempt) {
                BitString x = detail::uniform_bitstring(n, rng);
                if (!d.is_optimal(x))
                    return x;
            }
            throw std::runtime_error("sample_bitstring: no non-optimal string after "
                                     + std::to_string(d.max_attempts) + " attempts");
        }

        BitString operator()(const init::FixedOnes& d) const
        {
            if (d.ones > n)
                throw std::invalid_argument("sample_bitstring: FixedOnes(" + std::to_string(d.ones)
                                            + ") exceeds length " + std::to_string(n));
            BitString x(n);
            if (d.ones > 0) {
                SubsetSampler sampler(n, d.ones);
                x.flip_each(sampler.draw(rng));
            }
            return x;
        }

        BitString operator()(const init::Point& d) const
        {
            if (d.x.size() != n)
                throw std::invalid_argument("sample_bitstring: Point has length " + std::to_string(d.x.size())
                                            + ", expected " + std::to_string(n));
            return d.x;
        }
    };
    return std::visit(Visitor{n, rng}, dist);
}

} // namespace plateau
