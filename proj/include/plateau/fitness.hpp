#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core/bitstring.hpp"

namespace plateau::fitness {

/// Parameters shared by Plateau_r and Majority_r: even length n and
/// 0 <= r <= n/2. The optimum threshold is n/2 + r.
struct PlateauParams {
    int n;
    int r;

    void validate() const
    {
        if (n <= 0 || n % 2 != 0)
            throw std::invalid_argument("n must be a positive even integer, got " + std::to_string(n));
        if (r < 0 || r > n / 2)
            throw std::invalid_argument("r must lie in [0, n/2] = [0, " + std::to_string(n / 2) + "], got "
                                        + std::to_string(r));
    }

    [[nodiscard]] int threshold() const noexcept { return n / 2 + r; }
};

enum class Kind { plateau, majority, onemax, onemax_neutral, block_majority, custom };

/// An integer-valued pseudo-Boolean function with a known maximum.
///
/// Functions that depend on x only through |x|_1 carry a per-level value
/// table; evaluation is then an O(1) lookup and the exact oracle can build
/// level chains from them.
class FitnessFunction {
public:
    using Evaluator = std::function<std::int64_t(const BitString&)>;

    FitnessFunction(Kind kind, std::string name, std::size_t arity, std::int64_t max_value, Evaluator eval)
        : kind_(kind)
        , name_(std::move(name))
        , arity_(arity)
        , max_value_(max_value)
        , eval_(std::move(eval))
    {
    }

    /// Level-representable function: value depends only on the ones count.
    FitnessFunction(Kind kind, std::string name, std::vector<std::int64_t> by_level)
        : kind_(kind)
        , name_(std::move(name))
        , arity_(by_level.size() - 1)
        , max_value_(*std::max_element(by_level.begin(), by_level.end()))
        , by_level_(std::make_shared<const std::vector<std::int64_t>>(std::move(by_level)))
    {
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] std::int64_t max_value() const noexcept { return max_value_; }
    [[nodiscard]] const std::optional<PlateauParams>& plateau_params() const noexcept { return params_; }

    /// Per-level values for level-representable functions, else nullptr.
    [[nodiscard]] const std::vector<std::int64_t>* level_values() const noexcept { return by_level_.get(); }

    std::int64_t operator()(const BitString& x) const
    {
        if (x.size() != arity_)
            throw std::invalid_argument(name_ + ": input length " + std::to_string(x.size()) + " != arity "
                                        + std::to_string(arity_));
        return by_level_ ? (*by_level_)[x.count_ones()] : eval_(x);
    }

    [[nodiscard]] bool is_optimal(const BitString& x) const { return (*this)(x) == max_value_; }

    FitnessFunction& with_params(PlateauParams p)
    {
        params_ = p;
        return *this;
    }

private:
    Kind kind_;
    std::string name_;
    std::size_t arity_;
    std::int64_t max_value_;
    Evaluator eval_;
    std::shared_ptr<const std::vector<std::int64_t>> by_level_;
    std::optional<PlateauParams> params_;
};

namespace detail {

inline void check_length(const BitString& x, std::size_t n, std::string_view what)
{
    if (x.size() != n)
        throw std::invalid_argument(std::string(what) + ": input length " + std::to_string(x.size())
                                    + " != " + std::to_string(n));
}

} // namespace detail

/// 1 iff max(|x|_0, |x|_1) >= n/2 + r.
inline int plateau_value(const PlateauParams& p, const BitString& x)
{
    detail::check_length(x, static_cast<std::size_t>(p.n), "plateau_value");
    const auto m = std::max(x.count_ones(), x.count_zeros());
    return m >= static_cast<std::size_t>(p.threshold()) ? 1 : 0;
}

/// 1 iff |x|_1 >= n/2 + r.
inline int majority_value(const PlateauParams& p, const BitString& x)
{
    detail::check_length(x, static_cast<std::size_t>(p.n), "majority_value");
    return x.count_ones() >= static_cast<std::size_t>(p.threshold()) ? 1 : 0;
}

inline std::int64_t onemax_value(const BitString& x) { return static_cast<std::int64_t>(x.count_ones()); }

inline FitnessFunction plateau(PlateauParams p)
{
    p.validate();
    std::vector<std::int64_t> levels(static_cast<std::size_t>(p.n) + 1);
    for (int j = 0; j <= p.n; ++j)
        levels[static_cast<std::size_t>(j)] = std::max(j, p.n - j) >= p.threshold() ? 1 : 0;
    return FitnessFunction(Kind::plateau, "plateau", std::move(levels)).with_params(p);
}

inline FitnessFunction majority(PlateauParams p)
{
    p.validate();
    std::vector<std::int64_t> levels(static_cast<std::size_t>(p.n) + 1);
    for (int j = 0; j <= p.n; ++j)
        levels[static_cast<std::size_t>(j)] = j >= p.threshold() ? 1 : 0;
    return FitnessFunction(Kind::majority, "majority", std::move(levels)).with_params(p);
}

inline FitnessFunction onemax(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("onemax: n must be positive");
    std::vector<std::int64_t> levels(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        levels[j] = static_cast<std::int64_t>(j);
    return FitnessFunction(Kind::onemax, "onemax", std::move(levels));
}

/// W-model neutrality: `base` over `blocks` bits, each replaced by a block
/// of `width` bits whose value is its strict majority.
struct NeutralityParams {
    std::size_t blocks;
    std::size_t width;
    FitnessFunction base;

    void validate() const
    {
        if (blocks == 0 || width == 0)
            throw std::invalid_argument("neutrality: block count and width must be positive");
        if (base.arity() != blocks)
            throw std::invalid_argument("neutrality: base arity " + std::to_string(base.arity())
                                        + " != block count " + std::to_string(blocks));
    }

    [[nodiscard]] std::size_t length() const noexcept { return blocks * width; }
};

/// Block bit rule: |block|_1 >= floor(k/2) + 1. For even k this is
/// Majority_1 on k bits; ties never count as 1.
inline bool block_majority(const BitString& x, std::size_t block, std::size_t width)
{
    return x.count_range(block * width, (block + 1) * width) >= width / 2 + 1;
}

inline std::int64_t neutrality_value(const NeutralityParams& np, const BitString& x)
{
    detail::check_length(x, np.length(), "neutrality_value");
    BitString reduced(np.blocks);
    for (std::size_t b = 0; b < np.blocks; ++b)
        if (block_majority(x, b, np.width))
            reduced.flip(b);
    return np.base(reduced);
}

inline FitnessFunction neutrality(NeutralityParams np)
{
    np.validate();
    const auto max_value = np.base.max_value();
    const auto length = np.length();
    std::string name = "neutral(" + np.base.name() + ")";
    auto kind = np.base.kind() == Kind::onemax ? Kind::onemax_neutral : Kind::custom;
    return FitnessFunction(kind, std::move(name), length, max_value,
                           [np = std::move(np)](const BitString& x) { return neutrality_value(np, x); });
}

inline FitnessFunction onemax_neutral(std::size_t blocks, std::size_t width)
{
    return neutrality(NeutralityParams{blocks, width, onemax(blocks)});
}

/// The sub-function g_i of the separable decomposition: Majority_1 of block
/// i (1-based) only, over the full blocks*width genotype. Max value 1.
inline FitnessFunction separable_block_fitness(std::size_t i, const NeutralityParams& np)
{
    if (i < 1 || i > np.blocks)
        throw std::out_of_range("separable_block_fitness: block index " + std::to_string(i) + " outside [1, "
                                + std::to_string(np.blocks) + "]");
    const std::size_t block = i - 1;
    const std::size_t width = np.width;
    return FitnessFunction(Kind::block_majority, "block-majority", np.length(), 1,
                           [block, width](const BitString& x) -> std::int64_t {
                               return block_majority(x, block, width) ? 1 : 0;
                           });
}

/// Builds a function from its CLI identifier: plateau, majority, onemax,
/// onemax-neutral. For onemax-neutral, `n` is the number of blocks.
inline FitnessFunction make(std::string_view id, int n, int r, int k)
{
    if (id == "plateau")
        return plateau({n, r});
    if (id == "majority")
        return majority({n, r});
    if (id == "onemax") {
        if (n <= 0)
            throw std::invalid_argument("onemax: n must be positive");
        return onemax(static_cast<std::size_t>(n));
    }
    if (id == "onemax-neutral") {
        if (n <= 0 || k <= 0)
            throw std::invalid_argument("onemax-neutral: n (blocks) and k (width) must be positive");
        return onemax_neutral(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
    }
    throw std::invalid_argument("unknown function '" + std::string(id)
                                + "' (expected plateau, majority, onemax, onemax-neutral)");
}

} // namespace plateau::fitness
