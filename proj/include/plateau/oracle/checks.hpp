#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "../core/combinatorics.hpp"
#include "../core/numeric.hpp"
#include "../fitness.hpp"
#include "../theory.hpp"
#include "birth_death.hpp"
#include "kernel.hpp"

namespace plateau::oracle {

// ---------------------------------------------------------------------------
// Drift of the exponential potential

struct DriftRow {
    int level;            // max-count level m
    double drift;         // g(m) - E[g(M') | M = m]
    double bound;         // lower bound claimed for this level
    double slack;         // drift - bound
    double relative_slack;
};

struct DriftReport {
    int n;
    int r;
    double lambda;
    std::vector<DriftRow> rows;
    bool overflow = false;  // lambda^(m - n/2) left binary64 somewhere
    bool ok = true;         // every relative slack >= -tolerance
};

/// Computes the exact one-step drift of g on every non-absorbing level of
/// plateau_chain(n, r) and compares it with lambda - 1 at the center and
/// lambda^(m-n/2) (lambda - 1)/(3r) above it.
///
/// g(m) = lambda^r - phi(m) with phi(m) = lambda^(m - n/2) on the whole
/// state space (the absorbing level included), and rows sum to one, so the
/// drift is E[phi(M')] - phi(m). Working with phi avoids cancelling the
/// lambda^r terms.
inline DriftReport exact_drift_check(int n, int r, double tolerance = 1e-9)
{
    const auto chain = plateau_chain(n, r);
    const double lam = theory::lambda(n, r);
    const double log_lam = std::log(lam);
    auto phi = [&](int m) { return std::exp((m - n / 2) * log_lam); };

    DriftReport rep{n, r, lam, {}, false, true};
    for (int m = chain.lo; m <= chain.hi; ++m) {
        const auto i = chain.index(m);
        if (chain.absorbing[i])
            continue;
        const double stay = 1.0 - chain.up[i] - chain.down[i];
        CompensatedSum expected;
        expected += chain.up[i] * phi(m + 1);
        if (chain.down[i] > 0.0)
            expected += chain.down[i] * phi(m - 1);
        expected += stay * phi(m);
        const double drift = expected.value() - phi(m);
        const double bound = m == n / 2 ? lam - 1.0 : phi(m) * (lam - 1.0) / (3.0 * r);
        DriftRow row{m, drift, bound, drift - bound, 0.0};
        if (!std::isfinite(drift) || !std::isfinite(bound)) {
            rep.overflow = true;
            row.relative_slack = std::numeric_limits<double>::quiet_NaN();
        } else {
            row.relative_slack = row.slack / std::fabs(bound);
            if (row.relative_slack < -tolerance)
                rep.ok = false;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// OneMax-compliance of RLS_ell

/// What the ones-count distribution is taken over.
enum class ComplianceMode {
    /// The bare mutation |mut(x)|_1, as in the formal definition.
    mutation,
    /// Mutation followed by elitist selection on OneMax, i.e. the level
    /// max(|x|_1, |mut(x)|_1) reached by one (1+1) step on OneMax.
    elitist_onemax,
};

struct ComplianceViolation {
    int lower_level;   // |y|_1
    int upper_level;   // |z|_1 > |y|_1
    int threshold;     // i with P(|.|_1 >= i | y) > P(|.|_1 >= i | z)
    double lower_prob;
    double upper_prob;
};

struct ComplianceResult {
    bool compliant = true;
    std::optional<ComplianceViolation> first_violation;
};

/// P(level >= i) for i = 0..n+1, after one RLS_ell step from level j.
inline std::vector<double> rlsl_survival(int n, int ell, int j, ComplianceMode mode)
{
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    const auto [lo, hi] = hypergeom_support(n, j, ell);
    for (std::int64_t a = lo; a <= hi; ++a) {
        auto target = static_cast<int>(j + ell - 2 * a);
        if (mode == ComplianceMode::elitist_onemax)
            target = std::max(target, j);
        pmf[static_cast<std::size_t>(target)] += hypergeom_pmf(n, j, ell, a);
    }
    std::vector<double> surv(static_cast<std::size_t>(n) + 2, 0.0);
    CompensatedSum s;
    for (int i = n; i >= 0; --i) {
        s += pmf[static_cast<std::size_t>(i)];
        surv[static_cast<std::size_t>(i)] = s.value();
    }
    return surv;
}

/// Exhaustive check that the survival function of the offspring level is
/// nondecreasing in the parent level, over all level pairs and thresholds.
/// Reports the first violation in (lower, upper, threshold) order.
inline ComplianceResult onemax_compliance_check(int n, int ell, ComplianceMode mode = ComplianceMode::mutation,
                                                int exhaustive_limit = 64, double tolerance = 1e-12)
{
    if (n < 1 || n > exhaustive_limit)
        throw std::invalid_argument("onemax_compliance_check: n=" + std::to_string(n) + " outside [1, "
                                    + std::to_string(exhaustive_limit) + "]");
    if (ell < 1 || ell > n)
        throw std::invalid_argument("onemax_compliance_check: ell outside [1, n]");
    std::vector<std::vector<double>> surv;
    for (int j = 0; j <= n; ++j)
        surv.push_back(rlsl_survival(n, ell, j, mode));
    ComplianceResult res;
    for (int y = 0; y <= n; ++y)
        for (int z = y + 1; z <= n; ++z)
            for (int i = 0; i <= n; ++i) {
                const double py = surv[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)];
                const double pz = surv[static_cast<std::size_t>(z)][static_cast<std::size_t>(i)];
                if (py > pz + tolerance) {
                    res.compliant = false;
                    res.first_violation = ComplianceViolation{y, z, i, py, pz};
                    return res;
                }
            }
    return res;
}

// ---------------------------------------------------------------------------
// Expectations under an initialization distribution

namespace level_init {
struct Uniform {};
struct FixedOnes {
    int ones;
};
} // namespace level_init

using LevelInit = std::variant<level_init::Uniform, level_init::FixedOnes>;

/// Expected hitting time when the initial ones count follows `init`.
/// `by_level[j]` is E(j) for j = 0..n; infinite entries with positive
/// weight make the result infinite.
inline ExtReal expected_under_init(std::span<const double> by_level, const LevelInit& init)
{
    if (by_level.empty())
        throw std::invalid_argument("expected_under_init: empty level table");
    const auto n = static_cast<std::int64_t>(by_level.size()) - 1;
    if (const auto* fixed = std::get_if<level_init::FixedOnes>(&init)) {
        if (fixed->ones < 0 || fixed->ones > n)
            throw std::out_of_range("expected_under_init: FixedOnes level outside [0, n]");
        return ExtReal::of(by_level[static_cast<std::size_t>(fixed->ones)]);
    }
    const auto w = binomial_half_weights(n);
    CompensatedSum s;
    for (std::size_t j = 0; j < by_level.size(); ++j) {
        if (w[j] == 0.0)
            continue;
        if (!std::isfinite(by_level[j]))
            return ExtReal::infinite();
        s += w[j] * by_level[j];
    }
    return ExtReal::of(s.value());
}

// ---------------------------------------------------------------------------
// Level hitting times for the in-scope targets

enum class Target { plateau, majority };

struct LevelTimes {
    std::vector<double> by_ones;  // E(j) for j = 0..n
    bool overflow = false;
    double residual = 0.0;        // dense solver residual; 0 for birth-death
};

/// Exact E(j) for RLS_ell on Plateau_r or Majority_r from every ones count
/// j. ell = 1 uses the birth-death recurrences, larger ell the dense kernel.
inline LevelTimes level_hitting_times(Target target, int n, int r, int ell,
                                      std::size_t dense_limit = default_dense_limit)
{
    fitness::PlateauParams{n, r}.validate();
    const auto size = static_cast<std::size_t>(n) + 1;
    LevelTimes out{std::vector<double>(size, 0.0), false, 0.0};
    if (r == 0)
        return out;
    if (ell == 1) {
        if (target == Target::majority) {
            const auto chain = majority_chain(n, r);
            const auto h = bd_expected_hitting_all(chain);
            for (int j = 0; j <= chain.hi; ++j)
                out.by_ones[static_cast<std::size_t>(j)] = h.values[chain.index(j)];
            out.overflow = h.overflow;
        } else {
            const auto chain = plateau_chain(n, r);
            const auto h = bd_expected_hitting_all(chain);
            for (int j = 0; j <= n; ++j) {
                const int m = std::max(j, n - j);
                out.by_ones[static_cast<std::size_t>(j)] = m >= chain.hi ? 0.0 : h.values[chain.index(m)];
            }
            out.overflow = h.overflow;
        }
        return out;
    }
    const auto f = target == Target::majority ? fitness::majority({n, r}) : fitness::plateau({n, r});
    const auto sol = kernel_expected_hitting_all(rlsl_kernel(f, ell), dense_limit);
    out.by_ones = sol.values;
    out.overflow = sol.overflow;
    out.residual = sol.residual;
    return out;
}

} // namespace plateau::oracle
