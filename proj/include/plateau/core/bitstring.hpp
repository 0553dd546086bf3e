#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plateau {

/// Fixed-length bit vector packed into 64-bit words, with the number of
/// one-bits cached so that |x|_1 is O(1). Character i of the textual form
/// is bit i.
///
/// Invariants: bits at positions >= size() in the last word are zero, and
/// count_ones() equals the popcount of the stored words.
class BitString {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitString() = default;

    explicit BitString(std::size_t n)
        : size_(n)
        , words_(word_count(n), 0)
    {
    }

    static BitString all_ones(std::size_t n)
    {
        BitString x(n);
        std::fill(x.words_.begin(), x.words_.end(), ~word_type{0});
        x.mask_tail();
        x.ones_ = n;
        return x;
    }

    /// Takes ownership of `words`; the tail beyond `n` is cleared.
    static BitString from_words(std::size_t n, std::vector<word_type> words)
    {
        if (words.size() != word_count(n))
            throw std::invalid_argument("BitString::from_words: word count does not match length");
        BitString x;
        x.size_ = n;
        x.words_ = std::move(words);
        x.mask_tail();
        x.ones_ = x.popcount();
        return x;
    }

    static BitString from_string(std::string_view bits)
    {
        BitString x(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                x.flip(i);
            else if (bits[i] != '0')
                throw std::invalid_argument("BitString::from_string: expected only '0' and '1'");
        }
        return x;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (test(i))
                s[i] = '1';
        return s;
    }

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t count_ones() const noexcept { return ones_; }
    [[nodiscard]] std::size_t count_zeros() const noexcept { return size_ - ones_; }
    [[nodiscard]] std::span<const word_type> words() const noexcept { return words_; }

    [[nodiscard]] bool test(std::size_t i) const noexcept
    {
        return (words_[i / word_bits] >> (i % word_bits)) & 1U;
    }

    /// Unchecked single-bit flip; keeps the ones cache consistent.
    void flip(std::size_t i) noexcept
    {
        const word_type mask = word_type{1} << (i % word_bits);
        word_type& w = words_[i / word_bits];
        w ^= mask;
        if (w & mask)
            ++ones_;
        else
            --ones_;
    }

    /// Flips every index in `idx`. Indices must be in range and distinct;
    /// this is the hot path of the mutation loop and does not check.
    void flip_each(std::span<const std::uint32_t> idx) noexcept
    {
        for (auto i : idx)
            flip(i);
    }

    /// Number of ones in positions [begin, end).
    [[nodiscard]] std::size_t count_range(std::size_t begin, std::size_t end) const
    {
        if (begin > end || end > size_)
            throw std::out_of_range("BitString::count_range: range outside the string");
        if (begin == end)
            return 0;
        std::size_t total = 0;
        std::size_t first = begin / word_bits;
        std::size_t last = (end - 1) / word_bits;
        for (std::size_t w = first; w <= last; ++w) {
            word_type word = words_[w];
            if (w == first)
                word &= ~word_type{0} << (begin % word_bits);
            if (w == last && end % word_bits != 0)
                word &= ~word_type{0} >> (word_bits - end % word_bits);
            total += static_cast<std::size_t>(std::popcount(word));
        }
        return total;
    }

    [[nodiscard]] BitString complement() const
    {
        BitString x(*this);
        for (auto& w : x.words_)
            w = ~w;
        x.mask_tail();
        x.ones_ = size_ - ones_;
        return x;
    }

    /// Recomputes the popcount from the words, ignoring the cache.
    [[nodiscard]] std::size_t popcount() const noexcept
    {
        std::size_t total = 0;
        for (auto w : words_)
            total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    [[nodiscard]] std::size_t hamming_distance(const BitString& other) const
    {
        if (other.size_ != size_)
            throw std::invalid_argument("BitString::hamming_distance: length mismatch");
        std::size_t d = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            d += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
        return d;
    }

    friend bool operator==(const BitString& a, const BitString& b) noexcept
    {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    static constexpr std::size_t word_count(std::size_t n) noexcept { return (n + word_bits - 1) / word_bits; }

    void mask_tail() noexcept
    {
        if (size_ % word_bits != 0 && !words_.empty())
            words_.back() &= ~word_type{0} >> (word_bits - size_ % word_bits);
    }

    std::size_t size_ = 0;
    std::size_t ones_ = 0;
    std::vector<word_type> words_;
};

/// Returns a copy of `x` with exactly the positions in `idx` inverted.
/// Throws std::out_of_range for an index >= x.size() and
/// std::invalid_argument for a repeated index.
inline BitString flip_bits(const BitString& x, std::span<const std::uint32_t> idx)
{
    std::vector<std::uint32_t> sorted(idx.begin(), idx.end());
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.back() >= x.size())
        throw std::out_of_range("flip_bits: index " + std::to_string(sorted.back()) + " >= length "
                                + std::to_string(x.size()));
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("flip_bits: duplicate index");
    BitString y(x);
    y.flip_each(sorted);
    return y;
}

inline BitString flip_bits(const BitString& x, std::initializer_list<std::uint32_t> idx)
{
    return flip_bits(x, std::span<const std::uint32_t>(idx.begin(), idx.size()));
}

} // namespace plateau
