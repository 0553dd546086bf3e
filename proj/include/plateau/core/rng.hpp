#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace plateau {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Maps a 128-bit counter and a 64-bit key to 128
/// pseudo-random bits.
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) noexcept
{
    constexpr std::uint32_t m0 = 0xD2511F53U;
    constexpr std::uint32_t m1 = 0xCD9E8D57U;
    constexpr std::uint32_t w0 = 0x9E3779B9U;
    constexpr std::uint32_t w1 = 0xBB67AE85U;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += w0;
            key[1] += w1;
        }
        const std::uint64_t p0 = std::uint64_t{m0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{m1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
}

/// Counter-based random stream identified by (master_seed, stream_index).
///
/// The master seed is the Philox key and the stream index occupies the
/// upper half of the counter, so distinct streams draw from disjoint
/// counter ranges and never overlap. Equal identifiers give identical
/// sequences. Satisfies UniformRandomBitGenerator. Single consumer.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
        : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)}
        , stream_(stream_index)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    [[nodiscard]] std::uint64_t master_seed() const noexcept
    {
        return std::uint64_t{key_[0]} | (std::uint64_t{key_[1]} << 32);
    }
    [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_; }

    result_type operator()() noexcept
    {
        if (buffered_ == 0) {
            const auto out = philox4x32_10({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                                           key_);
            ++block_;
            buffer_[0] = std::uint64_t{out[0]} | (std::uint64_t{out[1]} << 32);
            buffer_[1] = std::uint64_t{out[2]} | (std::uint64_t{out[3]} << 32);
            buffered_ = 2;
        }
        return buffer_[2 - buffered_--];
    }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift
    /// with rejection, exactly uniform).
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        std::uint64_t x = (*this)();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = (*this)();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

/// SplitMix64 finalizer; used to derive sub-seeds from structured keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace plateau
