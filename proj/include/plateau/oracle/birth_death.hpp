#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "../core/numeric.hpp"
#include "../fitness.hpp"

namespace plateau::oracle {

/// Birth-death chain on the integer interval [lo, hi]. From state s the
/// chain moves to s+1 with up(s), to s-1 with down(s), and stays
/// otherwise. Absorbing states have up = down = 0.
struct BirthDeathChain {
    int lo = 0;
    int hi = 0;
    std::vector<double> up;
    std::vector<double> down;
    std::vector<bool> absorbing;

    BirthDeathChain(int lo_, int hi_)
        : lo(lo_)
        , hi(hi_)
        , up(static_cast<std::size_t>(hi_ - lo_ + 1), 0.0)
        , down(up.size(), 0.0)
        , absorbing(up.size(), false)
    {
        if (hi_ < lo_)
            throw std::invalid_argument("BirthDeathChain: empty state range");
    }

    [[nodiscard]] std::size_t size() const noexcept { return up.size(); }
    [[nodiscard]] std::size_t index(int s) const
    {
        if (s < lo || s > hi)
            throw std::out_of_range("BirthDeathChain: state " + std::to_string(s) + " outside ["
                                    + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<std::size_t>(s - lo);
    }

    void validate() const
    {
        for (std::size_t i = 0; i < size(); ++i) {
            if (up[i] < 0.0 || down[i] < 0.0 || up[i] > 1.0 || down[i] > 1.0 || up[i] + down[i] > 1.0 + 1e-15)
                throw std::invalid_argument("BirthDeathChain: invalid probabilities at state "
                                            + std::to_string(lo + static_cast<int>(i)));
            if (absorbing[i] && (up[i] != 0.0 || down[i] != 0.0))
                throw std::invalid_argument("BirthDeathChain: absorbing state with outgoing mass");
        }
        if (down.front() != 0.0 || up.back() != 0.0)
            throw std::invalid_argument("BirthDeathChain: probability mass leaves the state range");
    }
};

/// Chain of Z_t = max(|x_t|_0, |x_t|_1) for RLS on Plateau_r: states
/// [n/2, n/2 + r], forced up-move at the center, up (n-m)/n and down m/n
/// above it, n/2 + r absorbing.
inline BirthDeathChain plateau_chain(int n, int r)
{
    fitness::PlateauParams{n, r}.validate();
    if (r < 1)
        throw std::invalid_argument("plateau_chain: r must be >= 1 (r = 0 is optimal everywhere)");
    BirthDeathChain c(n / 2, n / 2 + r);
    for (int m = n / 2; m < n / 2 + r; ++m) {
        auto i = c.index(m);
        if (m == n / 2) {
            c.up[i] = 1.0;
        } else {
            c.up[i] = static_cast<double>(n - m) / n;
            c.down[i] = static_cast<double>(m) / n;
        }
    }
    c.absorbing[c.index(n / 2 + r)] = true;
    return c;
}

/// Chain of |x_t|_1 for RLS on Majority_r: states [0, n/2 + r], up (n-j)/n
/// and down j/n, top state absorbing. Every move below the top is accepted
/// since all those levels have fitness 0.
inline BirthDeathChain majority_chain(int n, int r)
{
    fitness::PlateauParams{n, r}.validate();
    const int top = n / 2 + r;
    BirthDeathChain c(0, top);
    for (int j = 0; j < top; ++j) {
        auto i = c.index(j);
        c.up[i] = static_cast<double>(n - j) / n;
        c.down[i] = static_cast<double>(j) / n;
    }
    c.absorbing[c.index(top)] = true;
    return c;
}

/// Expected absorption times for every state, indexed by s - lo. States
/// from which absorption is not certain hold +inf and are flagged.
struct HittingTimes {
    std::vector<double> values;
    std::vector<bool> unreachable;
    bool overflow = false;
};

namespace detail {

/// Transient run [a, b] absorbed only above: D(s) is the expected time to
/// step from s to s+1, D(s) = (1 + down(s) D(s-1)) / up(s), and E(s) is
/// the tail sum of D. A step is stuck when up(s) = 0, or when it may fall
/// back onto a stuck step; every state below a stuck step never absorbs.
inline void solve_upward(const BirthDeathChain& c, std::size_t a, std::size_t b, HittingTimes& out)
{
    std::vector<double> step(b - a + 1);
    std::vector<bool> stuck(b - a + 1);
    for (std::size_t i = a; i <= b; ++i) {
        const std::size_t k = i - a;
        const bool fall = c.down[i] > 0.0;
        stuck[k] = c.up[i] == 0.0 || (fall && k > 0 && stuck[k - 1]);
        if (!stuck[k])
            step[k] = (1.0 + (fall && k > 0 ? c.down[i] * step[k - 1] : 0.0)) / c.up[i];
    }
    CompensatedSum tail;
    bool blocked = false;
    for (std::size_t i = b + 1; i-- > a;) {
        const std::size_t k = i - a;
        blocked = blocked || stuck[k];
        if (blocked) {
            out.values[i] = std::numeric_limits<double>::infinity();
            out.unreachable[i] = true;
            continue;
        }
        tail += step[k];
        out.values[i] = tail.value();
        if (!std::isfinite(out.values[i]))
            out.overflow = true;
    }
}

/// Mirror image of solve_upward for runs absorbed only below.
inline void solve_downward(const BirthDeathChain& c, std::size_t a, std::size_t b, HittingTimes& out)
{
    const std::size_t m = b - a + 1;
    std::vector<double> step(m);
    std::vector<bool> stuck(m);
    for (std::size_t k = m; k-- > 0;) {
        const std::size_t i = a + k;
        const bool rise = c.up[i] > 0.0;
        stuck[k] = c.down[i] == 0.0 || (rise && k + 1 < m && stuck[k + 1]);
        if (!stuck[k])
            step[k] = (1.0 + (rise && k + 1 < m ? c.up[i] * step[k + 1] : 0.0)) / c.down[i];
    }
    CompensatedSum tail;
    bool blocked = false;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = a + k;
        blocked = blocked || stuck[k];
        if (blocked) {
            out.values[i] = std::numeric_limits<double>::infinity();
            out.unreachable[i] = true;
            continue;
        }
        tail += step[k];
        out.values[i] = tail.value();
        if (!std::isfinite(out.values[i]))
            out.overflow = true;
    }
}

/// Run [a, b] with absorbing neighbours on both sides: tridiagonal system
/// (1 - stay) E(s) - up E(s+1) - down E(s-1) = 1, solved by the Thomas
/// algorithm (the matrix is a diagonally dominant M-matrix).
inline void solve_two_sided(const BirthDeathChain& c, std::size_t a, std::size_t b, HittingTimes& out)
{
    const std::size_t m = b - a + 1;
    std::vector<double> cprime(m), dprime(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = a + k;
        const double diag = c.up[i] + c.down[i];
        const double sub = -c.down[i];
        const double sup = -c.up[i];
        const double denom = k == 0 ? diag : diag - sub * cprime[k - 1];
        if (denom == 0.0)
            throw std::domain_error("bd_expected_hitting: singular two-sided system");
        cprime[k] = sup / denom;
        dprime[k] = (k == 0 ? 1.0 : 1.0 - sub * dprime[k - 1]) / denom;
    }
    for (std::size_t k = m; k-- > 0;) {
        const double v = k + 1 == m ? dprime[k] : dprime[k] - cprime[k] * out.values[a + k + 1];
        out.values[a + k] = v;
        if (!std::isfinite(v))
            out.overflow = true;
    }
}

} // namespace detail

/// Exact expected absorption times for all states of `c`.
inline HittingTimes bd_expected_hitting_all(const BirthDeathChain& c)
{
    c.validate();
    const std::size_t size = c.size();
    HittingTimes out{std::vector<double>(size, 0.0), std::vector<bool>(size, false), false};
    std::size_t i = 0;
    while (i < size) {
        if (c.absorbing[i]) {
            ++i;
            continue;
        }
        std::size_t b = i;
        while (b + 1 < size && !c.absorbing[b + 1])
            ++b;
        const bool below = i > 0;
        const bool above = b + 1 < size;
        if (above && !below)
            detail::solve_upward(c, i, b, out);
        else if (below && !above)
            detail::solve_downward(c, i, b, out);
        else if (below && above)
            detail::solve_two_sided(c, i, b, out);
        else
            for (std::size_t k = i; k <= b; ++k) {
                out.values[k] = std::numeric_limits<double>::infinity();
                out.unreachable[k] = true;
            }
        i = b + 1;
    }
    return out;
}

/// Expected absorption time from `start`. Throws std::domain_error when no
/// absorbing state is reached with certainty; saturates to +inf with the
/// overflow flag when the value leaves binary64.
inline ExtReal bd_expected_hitting(const BirthDeathChain& c, int start)
{
    const auto idx = c.index(start);
    const auto all = bd_expected_hitting_all(c);
    if (all.unreachable[idx])
        throw std::domain_error("bd_expected_hitting: no absorbing state reachable from " + std::to_string(start));
    return ExtReal::of(all.values[idx]);
}

} // namespace plateau::oracle
