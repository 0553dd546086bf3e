#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "core/numeric.hpp"

namespace plateau::theory {

namespace detail {

inline void check_params(int n, int r, bool allow_zero_r)
{
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("n must be an even integer >= 2, got " + std::to_string(n));
    if (r > n / 2 || r < (allow_zero_r ? 0 : 1))
        throw std::invalid_argument("r must lie in [" + std::string(allow_zero_r ? "0" : "1") + ", n/2], got "
                                    + std::to_string(r));
}

/// lambda^e via exp(e ln lambda), saturating to +inf with the flag set.
inline ExtReal power(double lambda, double e)
{
    const double v = std::exp(e * std::log(lambda));
    return ExtReal::of(v);
}

} // namespace detail

/// Denominator 3r(n - 2(r-1)) - 2n of the potential base. It equals n at
/// r = 1 and r = n/2 and is concave in r in between, so it is >= n.
inline double lambda_denominator(int n, int r)
{
    const double nn = n;
    const double rr = r;
    return 3.0 * rr * (nn - 2.0 * (rr - 1.0)) - 2.0 * nn;
}

/// Base of the exponential potential for RLS on Plateau_r:
/// 3r(n + 2(r-1)) / (3r(n - 2(r-1)) - 2n). Undefined for r = 0.
inline double lambda(int n, int r)
{
    detail::check_params(n, r, false);
    const double nn = n;
    const double rr = r;
    return 3.0 * rr * (nn + 2.0 * (rr - 1.0)) / lambda_denominator(n, r);
}

/// Additive drift lower bound (lambda - 1) / (3r).
inline double drift_delta(int n, int r) { return (lambda(n, r) - 1.0) / (3.0 * r); }

/// Potential lambda^r - lambda^(m - n/2) on max-count levels m in
/// [n/2, n]; zero from n/2 + r on.
inline ExtReal potential_h(int n, int r, int m)
{
    detail::check_params(n, r, true);
    if (m < n / 2 || m > n)
        throw std::out_of_range("potential_h: level " + std::to_string(m) + " outside [n/2, n]");
    if (m >= n / 2 + r)
        return {0.0, false};
    const double lam = lambda(n, r);
    const ExtReal top = detail::power(lam, r);
    if (!top.finite())
        return ExtReal::infinite();
    // lambda^r - lambda^e = lambda^e (lambda^(r-e) - 1); expm1 keeps the
    // small-difference case accurate.
    const double e = m - n / 2;
    const double lead = std::exp(e * std::log(lam));
    return ExtReal::of(lead * std::expm1((r - e) * std::log(lam)));
}

/// The same function, named after its role in the drift argument.
inline ExtReal potential_g(int n, int r, int m) { return potential_h(n, r, m); }

/// Upper bound 3r h(m0) / (lambda - 1) on the expected run time of RLS on
/// Plateau_r from max-count level m0. Zero when r = 0 or m0 is optimal.
inline ExtReal plateau_bound(int n, int r, int m0)
{
    detail::check_params(n, r, true);
    if (m0 < n / 2 || m0 > n)
        throw std::out_of_range("plateau_bound: level " + std::to_string(m0) + " outside [n/2, n]");
    if (r == 0 || m0 >= n / 2 + r)
        return {0.0, false};
    const ExtReal h = potential_h(n, r, m0);
    if (!h.finite())
        return ExtReal::infinite();
    return ExtReal::of(3.0 * r * h.value / (lambda(n, r) - 1.0));
}

/// Upper bound 6r (lambda^r - 1)/(lambda - 1) + n (1 + ln r)/2 on the
/// expected run time of RLS on Majority_r with uniform initialization.
inline ExtReal asym_bound(int n, int r)
{
    detail::check_params(n, r, true);
    if (r == 0)
        return {0.0, false};
    const double lam = lambda(n, r);
    const double growth = std::expm1(r * std::log(lam));
    if (!std::isfinite(growth))
        return ExtReal::infinite();
    return ExtReal::of(6.0 * r * growth / (lam - 1.0) + n * (1.0 + std::log(static_cast<double>(r))) / 2.0);
}

/// Upper bound n (1 + ln d)/2 on the expected time for RLS to go from
/// |x|_0 = n/2 + d to a string with at least n/2 ones.
inline double majority_of_ones_bound(int n, int d)
{
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("n must be an even integer >= 2, got " + std::to_string(n));
    if (d < 1 || d > n / 2)
        throw std::invalid_argument("d must lie in [1, n/2], got " + std::to_string(d));
    return n * (1.0 + std::log(static_cast<double>(d))) / 2.0;
}

/// Per-block bound 6 + k/2 used for OneMax with neutrality of degree k:
/// asym_bound at r = 1 over k bits.
inline double block_bound(int k)
{
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("block_bound: k must be an even integer >= 2, got " + std::to_string(k));
    return 6.0 + k / 2.0;
}

struct BoundSet {
    int n;
    int r;
    double lambda;
    double drift_delta;
    ExtReal plateau_bound_center;
    ExtReal asym_bound;
};

inline BoundSet bounds(int n, int r)
{
    detail::check_params(n, r, true);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    BoundSet b{n, r, nan, nan, plateau_bound(n, r, n / 2), asym_bound(n, r)};
    if (r > 0) {
        b.lambda = lambda(n, r);
        b.drift_delta = drift_delta(n, r);
    }
    return b;
}

} // namespace plateau::theory
