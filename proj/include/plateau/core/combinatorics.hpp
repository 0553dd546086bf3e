#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace plateau {

/// ln C(n, k). Exact-term summation when min(k, n-k) is small, where the
/// lgamma difference would cancel badly; lgamma otherwise.
inline double log_binomial(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0 || k > n)
        throw std::domain_error("log_binomial: need 0 <= k <= n, got n=" + std::to_string(n)
                                + ", k=" + std::to_string(k));
    const std::int64_t m = std::min(k, n - k);
    if (m <= 64) {
        CompensatedSum s;
        for (std::int64_t i = 1; i <= m; ++i)
            s += std::log(static_cast<double>(n - m + i) / static_cast<double>(i));
        return s.value();
    }
    // Extended precision keeps the cancellation between the three terms
    // below the 1e-12 relative target.
    const long double v = std::lgamma(static_cast<long double>(n) + 1.0L)
                        - std::lgamma(static_cast<long double>(k) + 1.0L)
                        - std::lgamma(static_cast<long double>(n - k) + 1.0L);
    return static_cast<double>(v);
}

/// Hypergeometric support for drawing `draws` of `n` items, `successes` of
/// which are marked: a in [max(0, draws-(n-successes)), min(successes, draws)].
struct HypergeomSupport {
    std::int64_t lo;
    std::int64_t hi;
};

inline HypergeomSupport hypergeom_support(std::int64_t n, std::int64_t successes, std::int64_t draws)
{
    if (n < 0 || successes < 0 || successes > n || draws < 0 || draws > n)
        throw std::domain_error("hypergeom_support: invalid population parameters");
    return {std::max<std::int64_t>(0, draws - (n - successes)), std::min(successes, draws)};
}

/// P(A = a) where A counts marked items among `draws` drawn without
/// replacement from `n` items of which `successes` are marked.
inline double hypergeom_pmf(std::int64_t n, std::int64_t successes, std::int64_t draws, std::int64_t a)
{
    const auto [lo, hi] = hypergeom_support(n, successes, draws);
    if (a < lo || a > hi)
        throw std::domain_error("hypergeom_pmf: a=" + std::to_string(a) + " outside support ["
                                + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return std::exp(log_binomial(successes, a) + log_binomial(n - successes, draws - a) - log_binomial(n, draws));
}

/// Binomial(n, 1/2) probabilities C(n, j) 2^-n for j = 0..n, from log space.
inline std::vector<double> binomial_half_weights(std::int64_t n)
{
    if (n < 0)
        throw std::domain_error("binomial_half_weights: n must be nonnegative");
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    const double log_total = static_cast<double>(n) * std::numbers::ln2;
    for (std::int64_t j = 0; j <= n; ++j)
        w[static_cast<std::size_t>(j)] = std::exp(log_binomial(n, j) - log_total);
    return w;
}

} // namespace plateau
