#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "../core/combinatorics.hpp"
#include "../core/numeric.hpp"
#include "../fitness.hpp"

namespace plateau::oracle {

/// Dense row-stochastic chain over ones-count levels [0, n].
struct KernelChain {
    std::size_t size = 0;
    std::vector<double> p;  // row-major size x size
    std::vector<bool> absorbing;

    explicit KernelChain(std::size_t n_states)
        : size(n_states)
        , p(n_states * n_states, 0.0)
        , absorbing(n_states, false)
    {
    }

    double& at(std::size_t i, std::size_t j) { return p[i * size + j]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return p[i * size + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const { return {p.data() + i * size, size}; }
};

/// Level chain of RLS_ell under the elitist rule "accept if f(y) >= f(x)".
/// From level j the overlap a of the flipped set with the ones is
/// hypergeometric(n, j, ell) and the proposal lands on j + ell - 2a;
/// rejected mass stays on the diagonal. Absorbing rows are unit loops.
inline KernelChain rlsl_kernel(int n, int ell, std::span<const std::int64_t> fitness_by_level,
                               const std::vector<bool>& absorbing)
{
    if (n < 1)
        throw std::invalid_argument("rlsl_kernel: n must be positive");
    if (ell < 1 || ell > n)
        throw std::invalid_argument("rlsl_kernel: ell=" + std::to_string(ell) + " outside [1, n]");
    const auto size = static_cast<std::size_t>(n) + 1;
    if (fitness_by_level.size() != size || absorbing.size() != size)
        throw std::invalid_argument("rlsl_kernel: level tables must have n+1 entries");
    KernelChain k(size);
    k.absorbing = absorbing;
    for (int j = 0; j <= n; ++j) {
        const auto row = static_cast<std::size_t>(j);
        if (absorbing[row]) {
            k.at(row, row) = 1.0;
            continue;
        }
        const auto [lo, hi] = hypergeom_support(n, j, ell);
        for (std::int64_t a = lo; a <= hi; ++a) {
            const double prob = hypergeom_pmf(n, j, ell, a);
            const auto target = static_cast<std::size_t>(j + ell - 2 * a);
            if (fitness_by_level[target] >= fitness_by_level[row])
                k.at(row, target) += prob;
            else
                k.at(row, row) += prob;
        }
    }
    return k;
}

/// Overload for fitness functions; absorbing levels are the optimal ones.
/// Throws if `f` does not depend on x only through |x|_1.
inline KernelChain rlsl_kernel(const fitness::FitnessFunction& f, int ell)
{
    const auto* levels = f.level_values();
    if (levels == nullptr)
        throw std::invalid_argument("rlsl_kernel: fitness '" + f.name() + "' is not level-representable");
    std::vector<bool> absorbing(levels->size());
    for (std::size_t j = 0; j < levels->size(); ++j)
        absorbing[j] = (*levels)[j] == f.max_value();
    return rlsl_kernel(static_cast<int>(levels->size()) - 1, ell, *levels, absorbing);
}

struct KernelSolution {
    std::vector<double> values;      // +inf where absorption is not certain
    std::vector<bool> unreachable;
    double residual = 0.0;           // ||(I - Q)E - 1||_inf over the solved states
    double max_value = 0.0;          // ||E||_inf over the solved states
    bool overflow = false;
};

namespace detail {

/// State reduction on the transient block (Grassmann-Taksar-Heyman style).
/// `w` holds the off-diagonal transition probabilities among the m solved
/// states (row-major, diagonal ignored), `exit` the mass going straight to
/// absorption. Eliminating state k reroutes i -> k -> j through k's
/// outgoing distribution and charges k's expected time to i. Each pivot
/// 1 - P(k, k) is recomputed as a sum of outgoing mass, never as a
/// difference, so no step cancels and the result keeps full relative
/// accuracy however large the hitting times get.
inline std::vector<double> state_reduction_solve(std::vector<double>& w, std::vector<double>& exit, std::size_t m)
{
    std::vector<double> cost(m, 1.0);
    std::vector<double> pivot(m);
    for (std::size_t k = 0; k < m; ++k) {
        CompensatedSum out;
        out += exit[k];
        for (std::size_t j = k + 1; j < m; ++j)
            out += w[k * m + j];
        const double s = out.value();
        if (!(s > 0.0))
            throw std::domain_error("kernel_expected_hitting: singular system (absorption unreachable)");
        pivot[k] = s;
        for (std::size_t i = k + 1; i < m; ++i) {
            const double f = w[i * m + k];
            if (f == 0.0)
                continue;
            const double g = f / s;
            for (std::size_t j = k + 1; j < m; ++j)
                if (j != i)
                    w[i * m + j] += g * w[k * m + j];
            exit[i] += g * exit[k];
            cost[i] += g * cost[k];
        }
    }
    std::vector<double> e(m);
    for (std::size_t k = m; k-- > 0;) {
        CompensatedSum acc;
        acc += cost[k];
        for (std::size_t j = k + 1; j < m; ++j)
            acc += w[k * m + j] * e[j];
        e[k] = acc.value() / pivot[k];
    }
    return e;
}

/// States from which absorption happens with probability one: those that
/// cannot reach a transient state that itself cannot reach absorption.
inline std::vector<bool> certain_absorption(const KernelChain& k)
{
    const std::size_t m = k.size;
    std::vector<bool> reaches(m, false);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < m; ++i)
        if (k.absorbing[i]) {
            reaches[i] = true;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        const auto j = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < m; ++i)
            if (!reaches[i] && k.at(i, j) > 0.0) {
                reaches[i] = true;
                queue.push_back(i);
            }
    }
    std::vector<bool> doomed(m, false);
    for (std::size_t i = 0; i < m; ++i)
        if (!reaches[i]) {
            doomed[i] = true;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        const auto j = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < m; ++i)
            if (!doomed[i] && !k.absorbing[i] && k.at(i, j) > 0.0) {
                doomed[i] = true;
                queue.push_back(i);
            }
    }
    std::vector<bool> certain(m);
    for (std::size_t i = 0; i < m; ++i)
        certain[i] = !doomed[i];
    return certain;
}

} // namespace detail

inline constexpr std::size_t default_dense_limit = 4097;

/// Expected absorption times for every level: solves (I - Q) E = 1 on the
/// transient states with certain absorption by state reduction.
inline KernelSolution kernel_expected_hitting_all(const KernelChain& k, std::size_t dense_limit = default_dense_limit)
{
    if (k.size > dense_limit)
        throw std::invalid_argument("kernel_expected_hitting: chain size " + std::to_string(k.size)
                                    + " exceeds dense limit " + std::to_string(dense_limit));
    const auto certain = detail::certain_absorption(k);
    KernelSolution out;
    out.values.assign(k.size, 0.0);
    out.unreachable.assign(k.size, false);

    std::vector<std::size_t> solved;
    std::vector<std::size_t> slot(k.size, SIZE_MAX);
    for (std::size_t i = 0; i < k.size; ++i) {
        if (k.absorbing[i])
            continue;
        if (!certain[i]) {
            out.values[i] = std::numeric_limits<double>::infinity();
            out.unreachable[i] = true;
            continue;
        }
        slot[i] = solved.size();
        solved.push_back(i);
    }
    const std::size_t m = solved.size();
    if (m == 0)
        return out;

    std::vector<double> w(m * m, 0.0);
    std::vector<double> exit(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const auto i = solved[r];
        for (std::size_t j = 0; j < k.size; ++j) {
            if (j == i)
                continue;
            if (k.absorbing[j])
                exit[r] += k.at(i, j);
            else if (slot[j] != SIZE_MAX)
                w[r * m + slot[j]] = k.at(i, j);
        }
    }
    auto e = detail::state_reduction_solve(w, exit, m);

    // Residual of (I - Q) E = 1 against the original kernel.
    auto apply = [&](const std::vector<double>& x) {
        std::vector<double> y(m);
        for (std::size_t r = 0; r < m; ++r) {
            const auto i = solved[r];
            CompensatedSum s;
            s += x[r];
            for (std::size_t c = 0; c < m; ++c)
                s += -k.at(i, solved[c]) * x[c];
            y[r] = s.value();
        }
        return y;
    };
    const auto ax = apply(e);
    for (std::size_t r = 0; r < m; ++r) {
        out.residual = std::max(out.residual, std::fabs(ax[r] - 1.0));
        out.max_value = std::max(out.max_value, std::fabs(e[r]));
        out.values[solved[r]] = e[r];
        if (!std::isfinite(e[r]))
            out.overflow = true;
    }
    if (out.overflow) {
        for (auto i : solved)
            out.values[i] = std::numeric_limits<double>::infinity();
        out.residual = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

/// Expected absorption time from `start`. Throws std::domain_error when
/// absorption is not certain from `start`.
inline double kernel_expected_hitting(const KernelChain& k, std::size_t start,
                                      std::size_t dense_limit = default_dense_limit)
{
    if (start >= k.size)
        throw std::out_of_range("kernel_expected_hitting: start level outside the chain");
    const auto sol = kernel_expected_hitting_all(k, dense_limit);
    if (sol.unreachable[start])
        throw std::domain_error("kernel_expected_hitting: absorption unreachable from level " + std::to_string(start));
    return sol.values[start];
}

} // namespace plateau::oracle
