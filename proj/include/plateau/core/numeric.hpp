#pragma once

#include <cmath>
#include <limits>

namespace plateau {

/// A real value that may have left the binary64 range. `overflow` is set
/// whenever `value` was saturated to +inf by an intermediate result.
struct ExtReal {
    double value = 0.0;
    bool overflow = false;

    [[nodiscard]] bool finite() const noexcept { return !overflow && std::isfinite(value); }

    static ExtReal infinite() noexcept { return {std::numeric_limits<double>::infinity(), true}; }
    static ExtReal of(double v) noexcept { return {v, !std::isfinite(v)}; }
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::isfinite(t)) {
            if (std::fabs(sum_) >= std::fabs(x))
                compensation_ += (sum_ - t) + x;
            else
                compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    [[nodiscard]] double value() const noexcept
    {
        return std::isfinite(sum_) ? sum_ + compensation_ : sum_;
    }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace plateau
