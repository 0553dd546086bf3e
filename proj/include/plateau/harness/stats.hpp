#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "../core/numeric.hpp"

namespace plateau::harness {

/// Summary of one sweep cell. Censored runs are excluded from every
/// statistic and only counted; `stderr_mean` is the sample standard
/// deviation over the completed runs divided by sqrt(completed).
struct CellStats {
    double mean = 0.0;
    double median = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
    double stderr_mean = 0.0;
    std::size_t censored = 0;
    std::size_t runs = 0;  // runs started, censored included

    [[nodiscard]] std::size_t completed() const noexcept { return runs - censored; }

    friend bool operator==(const CellStats&, const CellStats&) = default;
};

/// Linear interpolation between order statistics (the "type 7" rule):
/// q-quantile at position q (m-1) of the sorted sample.
inline double quantile_sorted(std::span<const double> sorted, double q)
{
    if (sorted.empty())
        return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct MeanSe {
    double mean;
    double stderr_mean;
};

/// Mean and standard error (sample sd with n-1 over sqrt(n)); the error
/// is 0 for a single observation.
inline MeanSe mean_and_stderr(std::span<const double> xs)
{
    if (xs.empty())
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    CompensatedSum s;
    for (double x : xs)
        s += x;
    const double mean = s.value() / static_cast<double>(xs.size());
    if (xs.size() == 1)
        return {mean, 0.0};
    CompensatedSum sq;
    for (double x : xs)
        sq += (x - mean) * (x - mean);
    const double var = sq.value() / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

/// `completed` holds the run times of uncensored runs, in any order.
inline CellStats summarize(std::vector<double> completed, std::size_t censored)
{
    CellStats c;
    c.censored = censored;
    c.runs = completed.size() + censored;
    const auto ms = mean_and_stderr(completed);
    c.mean = ms.mean;
    c.stderr_mean = ms.stderr_mean;
    std::sort(completed.begin(), completed.end());
    c.p25 = quantile_sorted(completed, 0.25);
    c.median = quantile_sorted(completed, 0.5);
    c.p75 = quantile_sorted(completed, 0.75);
    return c;
}

} // namespace plateau::harness
