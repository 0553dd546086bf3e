#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "core/bitstring.hpp"
#include "core/rng.hpp"
#include "core/sampling.hpp"
#include "fitness.hpp"

namespace plateau::ea {

/// RLS_ell: flip a uniformly random set of exactly `ell` distinct bits.
struct MutationOp {
    std::size_t ell = 1;
};

inline BitString mutate(const BitString& x, MutationOp op, RngStream& rng)
{
    if (op.ell == 0 || op.ell > x.size())
        throw std::invalid_argument("mutate: ell=" + std::to_string(op.ell) + " outside [1, "
                                    + std::to_string(x.size()) + "]");
    BitString y(x);
    SubsetSampler sampler(x.size(), op.ell);
    y.flip_each(sampler.draw(rng));
    return y;
}

inline constexpr std::uint64_t default_max_iters = 1'000'000'000ULL;

struct RunConfig {
    fitness::FitnessFunction fitness;
    MutationOp mutation{1};
    InitDistribution init = init::Uniform{};
    std::uint64_t master_seed = 0;
    std::uint64_t run_index = 0;
    std::uint64_t max_iters = default_max_iters;
    bool trajectory = false;
    /// Track the restart decomposition; requires a Majority_r target.
    bool restart_stats = false;
};

struct TrajectoryPoint {
    std::uint64_t t;
    std::uint32_t ones;
    std::int64_t fitness;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

/// Interleaved stopping times of one run on Majority_r:
///   T'_0     first t with Plateau_r(x_t) = 1,
///   T_i      first t >= T'_i with |x_t|_1 >= n/2,
///   T'_{i+1} first t > T_i with Plateau_r(x_t) = 1.
/// `retries` is U = sup{i : T'_i <= S} for the Majority hitting time S.
struct RestartStats {
    std::vector<std::uint64_t> plateau_hits;  // T'_0, T'_1, ...
    std::vector<std::uint64_t> returns;       // T_0, T_1, ...
    std::uint64_t retries = 0;                // U
    bool retried = false;                     // L: U >= 1
    bool first_hit_majority = false;          // x at T'_0 is a Majority_r optimum
    bool partial = false;                     // the run was censored

    friend bool operator==(const RestartStats&, const RestartStats&) = default;
};

/// Online form of the stopping-time definitions, fed one ones-count per
/// iteration in increasing t.
class RestartTracker {
public:
    explicit RestartTracker(fitness::PlateauParams p)
        : params_(p)
    {
        p.validate();
    }

    void observe(std::uint64_t t, std::size_t ones)
    {
        const auto n = static_cast<std::size_t>(params_.n);
        const auto threshold = static_cast<std::size_t>(params_.threshold());
        if (waiting_for_plateau_) {
            if (std::max(ones, n - ones) < threshold)
                return;
            if (stats_.plateau_hits.empty())
                stats_.first_hit_majority = ones >= threshold;
            stats_.plateau_hits.push_back(t);
            waiting_for_plateau_ = false;
        }
        // T_i may coincide with T'_i.
        if (ones * 2 >= n) {
            stats_.returns.push_back(t);
            waiting_for_plateau_ = true;
        }
    }

    /// Closes the record; `censored` marks the stats as partial.
    [[nodiscard]] RestartStats finish(bool censored) const
    {
        RestartStats s = stats_;
        s.partial = censored;
        s.retries = s.plateau_hits.empty() ? 0 : s.plateau_hits.size() - 1;
        s.retried = s.retries >= 1;
        return s;
    }

private:
    fitness::PlateauParams params_;
    RestartStats stats_;
    bool waiting_for_plateau_ = true;
};

/// Restart statistics from a recorded trajectory of a run on Majority_r.
inline RestartStats extract_restart_stats(std::span<const TrajectoryPoint> trajectory, fitness::PlateauParams p,
                                          bool censored)
{
    RestartTracker tracker(p);
    for (const auto& pt : trajectory)
        tracker.observe(pt.t, pt.ones);
    return tracker.finish(censored);
}

/// Same, from a bare sequence of ones counts indexed by t.
inline RestartStats extract_restart_stats(std::span<const std::uint32_t> ones_by_t, fitness::PlateauParams p,
                                          bool censored)
{
    RestartTracker tracker(p);
    for (std::size_t t = 0; t < ones_by_t.size(); ++t)
        tracker.observe(t, ones_by_t[t]);
    return tracker.finish(censored);
}

struct RunResult {
    std::optional<std::uint64_t> runtime;  // empty when censored
    std::uint64_t iterations = 0;          // iterations executed
    std::uint64_t accepted = 0;            // accepted proposals
    std::size_t init_ones = 0;
    std::vector<TrajectoryPoint> trajectory;
    std::optional<RestartStats> restart;

    [[nodiscard]] bool censored() const noexcept { return !runtime.has_value(); }

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

inline void validate(const RunConfig& cfg)
{
    const auto n = cfg.fitness.arity();
    if (cfg.max_iters < 1)
        throw std::invalid_argument("run: max_iters must be >= 1");
    if (cfg.mutation.ell < 1 || cfg.mutation.ell > n)
        throw std::invalid_argument("run: ell=" + std::to_string(cfg.mutation.ell) + " outside [1, n=" + std::to_string(n)
                                    + "]");
    if (cfg.restart_stats && (cfg.fitness.kind() != fitness::Kind::majority || !cfg.fitness.plateau_params()))
        throw std::invalid_argument("run: restart statistics require a Majority_r target");
    if (const auto* p = std::get_if<init::Point>(&cfg.init); p && p->x.size() != n)
        throw std::invalid_argument("run: initial point length differs from fitness arity");
    if (const auto* f = std::get_if<init::FixedOnes>(&cfg.init); f && f->ones > n)
        throw std::invalid_argument("run: FixedOnes level exceeds fitness arity");
}

/// One run of the (1+1) unary unbiased elitist scheme with RLS_ell:
/// x_0 ~ D; y = mutate(x_t); x_{t+1} = y if f(y) >= f(x_t) else x_t. The
/// run time is the least t with f(x_t) = max f, so an optimal x_0 gives 0.
/// Reaching max_iters without an optimum yields a censored result.
inline RunResult run(const RunConfig& cfg)
{
    validate(cfg);
    const auto& f = cfg.fitness;
    const std::size_t n = f.arity();
    RngStream rng(cfg.master_seed, cfg.run_index);

    InitDistribution init = cfg.init;
    if (auto* d = std::get_if<init::UniformNonOptimal>(&init); d && !d->is_optimal)
        d->is_optimal = [&f](const BitString& x) { return f.is_optimal(x); };
    BitString x = sample_bitstring(n, init, rng);

    RunResult res;
    res.init_ones = x.count_ones();
    std::optional<RestartTracker> tracker;
    if (cfg.restart_stats)
        tracker.emplace(*f.plateau_params());

    std::int64_t fx = f(x);
    const std::int64_t best = f.max_value();
    auto record = [&](std::uint64_t t) {
        if (cfg.trajectory)
            res.trajectory.push_back({t, static_cast<std::uint32_t>(x.count_ones()), fx});
        if (tracker)
            tracker->observe(t, x.count_ones());
    };

    record(0);
    if (fx == best) {
        res.runtime = 0;
    } else {
        SubsetSampler sampler(n, cfg.mutation.ell);
        for (std::uint64_t t = 0; t < cfg.max_iters; ++t) {
            const auto idx = sampler.draw(rng);
            x.flip_each(idx);
            const std::int64_t fy = f(x);
            if (fy >= fx) {
                fx = fy;
                ++res.accepted;
            } else {
                x.flip_each(idx);
            }
            res.iterations = t + 1;
            record(t + 1);
            if (fx == best) {
                res.runtime = t + 1;
                break;
            }
        }
    }
    if (tracker)
        res.restart = tracker->finish(res.censored());
    return res;
}

} // namespace plateau::ea
